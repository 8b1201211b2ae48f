//! Linear algebra over the prime field `F_q`.
//!
//! Vectors of `F_q^n` are numbered `0..q^n` by reading their coordinates as
//! base-`q` digits, most significant first, and serialized as digit strings.
//! Subspaces are kept in reduced row-echelon form, which makes equality and the
//! canonical key (`"dim:rows"`) structural.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::bits::PointSet;
use crate::order::{FinLattice, LatticeMap};
use crate::space::FinSpace;
use crate::{Caps, Error, Result};

pub type Vector = Vec<u32>;

pub fn check_prime(q: u32) -> Result<()> {
    if q < 2 || (2..q).take_while(|d| d * d <= q).any(|d| q % d == 0) {
        return Err(Error::NotPrime(q));
    }
    if q > 36 {
        return Err(Error::InvalidInput(vec![format!("modulus {q} exceeds the supported digit range (≤ 36)")]));
    }
    Ok(())
}

fn inv(a: u32, q: u32) -> u32 {
    // Fermat: a^(q-2).
    let (mut base, mut exp, mut acc) = (a as u64 % q as u64, q - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % q as u64;
        }
        base = base * base % q as u64;
        exp >>= 1;
    }
    acc as u32
}

fn digit_char(d: u32) -> char {
    std::char::from_digit(d, 36).expect("digit below 36")
}

pub fn format_vector(v: &[u32]) -> String {
    v.iter().map(|&d| digit_char(d)).collect()
}

pub fn parse_vector(s: &str, q: u32, n: usize) -> Result<Vector> {
    if s.chars().count() != n {
        return Err(Error::DimensionMismatch { expected: n, found: s.chars().count() });
    }
    s.chars()
        .map(|c| match c.to_digit(36) {
            Some(d) if d < q => Ok(d),
            _ => Err(Error::InvalidInput(vec![format!("`{c}` is not a digit mod {q} in vector `{s}`")])),
        })
        .collect()
}

pub fn vector_index(v: &[u32], q: u32) -> usize {
    v.iter().fold(0usize, |acc, &d| acc * q as usize + d as usize)
}

pub fn vector_at(index: usize, q: u32, n: usize) -> Vector {
    let mut v = vec![0; n];
    let mut rest = index;
    for slot in v.iter_mut().rev() {
        *slot = (rest % q as usize) as u32;
        rest /= q as usize;
    }
    v
}

pub fn vector_count(q: u32, n: usize) -> Option<usize> {
    (q as usize).checked_pow(n as u32)
}

fn add_scaled(target: &mut [u32], src: &[u32], c: u32, q: u32) {
    for (t, &s) in target.iter_mut().zip(src) {
        *t = (*t + c * s) % q;
    }
}

fn neg(a: u32, q: u32) -> u32 {
    (q - a % q) % q
}

/// Reduced row-echelon form of `rows`, zero rows dropped.
pub fn rref(mut rows: Vec<Vector>, q: u32) -> Vec<Vector> {
    let n = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..n {
        let Some(pivot) = (r..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
        rows.swap(r, pivot);
        let scale = inv(rows[r][col], q);
        for x in rows[r].iter_mut() {
            *x = *x * scale % q;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let c = neg(row[col], q);
                add_scaled(row, &pivot_row, c, q);
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

fn pivots(rows: &[Vector]) -> Vec<usize> {
    rows.iter().map(|r| r.iter().position(|&x| x != 0).expect("rref rows are nonzero")).collect()
}

/// Basis of `{v : M v = 0}`.
pub fn nullspace(rows: Vec<Vector>, q: u32, n: usize) -> Vec<Vector> {
    let red = rref(rows, q);
    let piv = pivots(&red);
    (0..n)
        .filter(|c| !piv.contains(c))
        .map(|free| {
            let mut v = vec![0; n];
            v[free] = 1;
            for (row, &p) in red.iter().zip(&piv) {
                v[p] = neg(row[free], q);
            }
            v
        })
        .collect()
}

/// A subspace of `F_q^n`, stored by its RREF basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqSubspace {
    q: u32,
    n: usize,
    rows: Vec<Vector>,
}

impl FqSubspace {
    pub fn zero(q: u32, n: usize) -> FqSubspace {
        FqSubspace { q, n, rows: Vec::new() }
    }

    pub fn whole(q: u32, n: usize) -> FqSubspace {
        let rows = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        FqSubspace { q, n, rows }
    }

    pub fn span(q: u32, n: usize, vectors: impl IntoIterator<Item = Vector>) -> Result<FqSubspace> {
        let vectors: Vec<Vector> = vectors.into_iter().collect();
        if let Some(v) = vectors.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: v.len() });
        }
        let vectors = vectors.into_iter().map(|v| v.into_iter().map(|x| x % q).collect()).collect();
        Ok(FqSubspace { q, n, rows: rref(vectors, q) })
    }

    /// Parses basis vectors given as digit strings.
    pub fn from_strings(q: u32, n: usize, basis: &[&str]) -> Result<FqSubspace> {
        let vs = basis.iter().map(|s| parse_vector(s, q, n)).collect::<Result<Vec<_>>>()?;
        FqSubspace::span(q, n, vs)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    /// Canonical key `"dim:rows"`, e.g. `"1:01"` for the line through `(0,1)`.
    pub fn key(&self) -> String {
        let rows: String = self.rows.iter().map(|r| format_vector(r)).collect();
        format!("{}:{}", self.dim(), rows)
    }

    pub fn basis_strings(&self) -> Vec<String> {
        self.rows.iter().map(|r| format_vector(r)).collect()
    }

    fn same_ambient(&self, other: &FqSubspace) -> Result<()> {
        if self.n != other.n || self.q != other.q {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    pub fn sum(&self, other: &FqSubspace) -> Result<FqSubspace> {
        self.same_ambient(other)?;
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        Ok(FqSubspace { q: self.q, n: self.n, rows: rref(rows, self.q) })
    }

    /// `{w : w·v = 0 for all v ∈ self}`.
    pub fn annihilator(&self) -> FqSubspace {
        let rows = nullspace(self.rows.clone(), self.q, self.n);
        FqSubspace { q: self.q, n: self.n, rows: rref(rows, self.q) }
    }

    /// Intersection as the nullspace of both annihilators stacked.
    pub fn intersect(&self, other: &FqSubspace) -> Result<FqSubspace> {
        self.same_ambient(other)?;
        let constraints: Vec<Vector> = self.annihilator().rows.into_iter().chain(other.annihilator().rows).collect();
        let rows = nullspace(constraints, self.q, self.n);
        Ok(FqSubspace { q: self.q, n: self.n, rows: rref(rows, self.q) })
    }

    /// Canonical representative of `a + self`: `a` with the pivot coordinates cleared.
    pub fn reduce(&self, a: &[u32]) -> Vector {
        let mut v = a.to_vec();
        for (row, p) in self.rows.iter().zip(pivots(&self.rows)) {
            if v[p] != 0 {
                let c = neg(v[p], self.q);
                add_scaled(&mut v, row, c, self.q);
            }
        }
        v
    }

    pub fn contains(&self, a: &[u32]) -> Result<bool> {
        if a.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: a.len() });
        }
        Ok(self.reduce(a).iter().all(|&x| x == 0))
    }

    pub fn is_subspace_of(&self, other: &FqSubspace) -> bool {
        self.rows.iter().all(|r| other.reduce(r).iter().all(|&x| x == 0))
    }

    /// All coset representatives of `F_q^n / self`: vectors vanishing on the
    /// pivot coordinates, in index order.
    pub fn coset_reps(&self) -> Vec<Vector> {
        let piv = pivots(&self.rows);
        let total = vector_count(self.q, self.n).expect("ambient space fits in memory");
        (0..total).map(|i| vector_at(i, self.q, self.n)).filter(|v| piv.iter().all(|&p| v[p] == 0)).collect()
    }

    /// Members as a set of vector indices.
    pub fn members(&self) -> PointSet {
        let total = vector_count(self.q, self.n).expect("ambient space fits in memory");
        let mut out = PointSet::empty(total);
        let mut coeffs = vec![0u32; self.dim()];
        loop {
            let mut v = vec![0; self.n];
            for (row, &c) in self.rows.iter().zip(&coeffs) {
                add_scaled(&mut v, row, c, self.q);
            }
            out.insert(vector_index(&v, self.q));
            let Some(i) = coeffs.iter().rposition(|&c| c + 1 < self.q) else { break };
            coeffs[i] += 1;
            for c in coeffs[i + 1..].iter_mut() {
                *c = 0;
            }
        }
        out
    }
}

impl fmt::Display for FqSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}⟩", self.basis_strings().join(","))
    }
}

/// A linear map `F_q^n → F_q^m`, stored as an `m × n` matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqLinearMap {
    q: u32,
    source_dim: usize,
    target_dim: usize,
    matrix: Vec<Vector>,
}

impl FqLinearMap {
    pub fn new(q: u32, source_dim: usize, matrix: Vec<Vector>) -> Result<FqLinearMap> {
        if let Some(row) = matrix.iter().find(|r| r.len() != source_dim) {
            return Err(Error::DimensionMismatch { expected: source_dim, found: row.len() });
        }
        let matrix = matrix.into_iter().map(|r| r.into_iter().map(|x| x % q).collect()).collect::<Vec<Vector>>();
        Ok(FqLinearMap { q, source_dim, target_dim: matrix.len(), matrix })
    }

    pub fn identity(q: u32, n: usize) -> FqLinearMap {
        FqLinearMap { q, source_dim: n, target_dim: n, matrix: FqSubspace::whole(q, n).rows }
    }

    pub fn zero(q: u32, source_dim: usize, target_dim: usize) -> FqLinearMap {
        FqLinearMap { q, source_dim, target_dim, matrix: vec![vec![0; source_dim]; target_dim] }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn matrix(&self) -> &[Vector] {
        &self.matrix
    }

    pub fn apply(&self, v: &[u32]) -> Vector {
        self.matrix.iter().map(|row| row.iter().zip(v).fold(0, |acc, (&a, &b)| (acc + a * b) % self.q)).collect()
    }

    pub fn apply_index(&self, v: usize) -> usize {
        vector_index(&self.apply(&vector_at(v, self.q, self.source_dim)), self.q)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FqLinearMap) -> Result<FqLinearMap> {
        if self.target_dim != other.source_dim || self.q != other.q {
            return Err(Error::DimensionMismatch { expected: other.source_dim, found: self.target_dim });
        }
        let matrix = other
            .matrix
            .iter()
            .map(|row| {
                (0..self.source_dim)
                    .map(|j| (0..self.target_dim).fold(0, |acc, k| (acc + row[k] * self.matrix[k][j]) % self.q))
                    .collect()
            })
            .collect();
        Ok(FqLinearMap { q: self.q, source_dim: self.source_dim, target_dim: other.target_dim, matrix })
    }

    pub fn image(&self, v: &FqSubspace) -> Result<FqSubspace> {
        if v.n != self.source_dim {
            return Err(Error::DimensionMismatch { expected: self.source_dim, found: v.n });
        }
        FqSubspace::span(self.q, self.target_dim, v.rows.iter().map(|r| self.apply(r)))
    }

    /// `f⁻¹(W)` as the nullspace of `ann(W)·F`.
    pub fn preimage(&self, w: &FqSubspace) -> Result<FqSubspace> {
        if w.n != self.target_dim {
            return Err(Error::DimensionMismatch { expected: self.target_dim, found: w.n });
        }
        let constraints: Vec<Vector> = w
            .annihilator()
            .rows
            .iter()
            .map(|a| {
                (0..self.source_dim)
                    .map(|j| (0..self.target_dim).fold(0, |acc, k| (acc + a[k] * self.matrix[k][j]) % self.q))
                    .collect()
            })
            .collect();
        let rows = nullspace(constraints, self.q, self.source_dim);
        FqSubspace::span(self.q, self.source_dim, rows)
    }

    pub fn kernel(&self) -> FqSubspace {
        self.preimage(&FqSubspace::zero(self.q, self.target_dim)).expect("dimensions agree")
    }

    /// Matrix rows as digit strings.
    pub fn row_strings(&self) -> Vec<String> {
        self.matrix.iter().map(|r| format_vector(r)).collect()
    }
}

impl fmt::Display for FqLinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.row_strings().join(";"))
    }
}

/// Every linear map `F_q^n → F_q^m`, matrices in row-major lexicographic order.
pub fn all_linear_maps(q: u32, n: usize, m: usize, caps: &Caps) -> Result<Vec<FqLinearMap>> {
    let entries = n * m;
    let count = (q as u128).checked_pow(entries as u32).unwrap_or(u128::MAX);
    caps.check("linear maps", count)?;
    Ok((0..count as usize)
        .map(|i| {
            let flat = vector_at(i, q, entries);
            let matrix = (0..m).map(|r| flat[r * n..(r + 1) * n].to_vec()).collect();
            FqLinearMap { q, source_dim: n, target_dim: m, matrix }
        })
        .collect())
}

/// All subspaces of `F_q^n`, ordered by dimension then canonical key.
pub fn enumerate_subspaces(q: u32, n: usize, caps: &Caps) -> Result<Vec<FqSubspace>> {
    check_prime(q)?;
    let total = vector_count(q, n).filter(|&t| t as u64 <= caps.enumeration).ok_or(Error::CapExceeded {
        what: "vectors".into(),
        needed: (q as u128).saturating_pow(n as u32),
        cap: caps.enumeration,
    })?;
    let mut found: BTreeMap<(usize, String), FqSubspace> = BTreeMap::new();
    let zero = FqSubspace::zero(q, n);
    found.insert((0, zero.key()), zero.clone());
    let mut queue = VecDeque::from([zero]);
    while let Some(v) = queue.pop_front() {
        let members = v.members();
        for i in 0..total {
            if members.contains(i) {
                continue;
            }
            let bigger = v.sum(&FqSubspace { q, n, rows: vec![vector_at(i, q, n)] })?;
            let key = (bigger.dim(), bigger.key());
            if !found.contains_key(&key) {
                found.insert(key, bigger.clone());
                caps.check("subspaces", found.len() as u128)?;
                queue.push_back(bigger);
            }
        }
    }
    Ok(found.into_values().collect())
}

/// `Sub A` as a lattice ordered by inclusion.
#[derive(Debug, Clone)]
pub struct SubLattice {
    pub q: u32,
    pub n: usize,
    pub subspaces: Vec<FqSubspace>,
    /// Member vectors of each subspace.
    pub members: Vec<PointSet>,
    pub lattice: Arc<FinLattice>,
    by_key: HashMap<String, usize>,
    by_members: HashMap<PointSet, usize>,
}

impl SubLattice {
    pub fn new(q: u32, n: usize, caps: &Caps) -> Result<SubLattice> {
        let subspaces = enumerate_subspaces(q, n, caps)?;
        caps.check("subspace lattice table", (subspaces.len() as u128).pow(2))?;
        let members: Vec<PointSet> = subspaces.iter().map(FqSubspace::members).collect();
        let by_key: HashMap<String, usize> = subspaces.iter().enumerate().map(|(i, s)| (s.key(), i)).collect();
        let by_members: HashMap<PointSet, usize> = members.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let lattice = FinLattice::from_parts(
            subspaces.iter().map(FqSubspace::key).collect(),
            |a, b| members[a].is_subset(&members[b]),
            |a, b| by_key[&subspaces[a].sum(&subspaces[b]).expect("same ambient").key()],
            |a, b| by_members[&members[a].intersection(&members[b])],
        )?;
        Ok(SubLattice { q, n, subspaces, members, lattice: Arc::new(lattice), by_key, by_members })
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    pub fn vector_count(&self) -> usize {
        self.members.first().map_or(1, PointSet::universe)
    }

    pub fn zero(&self) -> usize {
        self.lattice.bottom()
    }

    pub fn whole(&self) -> usize {
        self.lattice.top()
    }

    pub fn index_of(&self, s: &FqSubspace) -> Result<usize> {
        self.by_key.get(&s.key()).copied().ok_or_else(|| Error::UnknownElement(s.key()))
    }

    pub fn index_of_key(&self, key: &str) -> Result<usize> {
        self.by_key.get(key).copied().ok_or_else(|| Error::UnknownElement(key.to_string()))
    }

    pub fn index_of_members(&self, s: &PointSet) -> Option<usize> {
        self.by_members.get(s).copied()
    }

    pub fn key(&self, i: usize) -> String {
        self.subspaces[i].key()
    }

    /// Subspace spanned by a set of vector indices.
    pub fn span_of(&self, vectors: &PointSet) -> usize {
        let s = FqSubspace::span(self.q, self.n, vectors.iter().map(|i| vector_at(i, self.q, self.n)))
            .expect("vectors of the ambient space");
        self.by_key[&s.key()]
    }

    /// `⟨a⟩` for a vector index.
    pub fn line(&self, a: usize) -> usize {
        self.span_of(&PointSet::singleton(self.vector_count(), a))
    }

    pub fn vector_labels(&self) -> Vec<String> {
        (0..self.vector_count()).map(|i| format_vector(&vector_at(i, self.q, self.n))).collect()
    }
}

/// `Sub f : Sub A → Sub B`, `V ↦ f(V)`.
pub fn image_map(f: &FqLinearMap, src: &SubLattice, tgt: &SubLattice) -> Result<LatticeMap> {
    let table = src.subspaces.iter().map(|v| tgt.index_of(&f.image(v)?)).collect::<Result<Vec<_>>>()?;
    LatticeMap::new(src.lattice.clone(), tgt.lattice.clone(), table)
}

/// `f⁻¹ : Sub B → Sub A`.
pub fn preimage_map(f: &FqLinearMap, src: &SubLattice, tgt: &SubLattice) -> Result<LatticeMap> {
    let table = tgt.subspaces.iter().map(|w| src.index_of(&f.preimage(w)?)).collect::<Result<Vec<_>>>()?;
    LatticeMap::new(tgt.lattice.clone(), src.lattice.clone(), table)
}

/// `F_q^n` with a topology on its vectors (discrete unless given).
#[derive(Debug, Clone)]
pub struct FqSpace {
    pub q: u32,
    pub dim: usize,
    pub carrier: Arc<FinSpace>,
}

impl FqSpace {
    pub fn discrete(q: u32, dim: usize) -> Result<FqSpace> {
        check_prime(q)?;
        let total = vector_count(q, dim).ok_or(Error::CapExceeded {
            what: "vectors".into(),
            needed: u128::MAX,
            cap: u64::MAX,
        })?;
        let labels = (0..total).map(|i| format_vector(&vector_at(i, q, dim))).collect();
        Ok(FqSpace { q, dim, carrier: Arc::new(FinSpace::discrete(labels)) })
    }

    pub fn indiscrete(q: u32, dim: usize) -> Result<FqSpace> {
        let d = FqSpace::discrete(q, dim)?;
        Ok(FqSpace { carrier: Arc::new(FinSpace::indiscrete(d.carrier.labels().to_vec())), ..d })
    }

    /// Attaches a carrier topology whose points are the vector strings, in any
    /// order; the points are re-indexed canonically.
    pub fn with_carrier(q: u32, dim: usize, carrier: &FinSpace) -> Result<FqSpace> {
        let base = FqSpace::discrete(q, dim)?;
        if carrier.len() != base.carrier.len() {
            return Err(Error::Mismatch(format!(
                "carrier has {} points but F_{q}^{dim} has {} vectors",
                carrier.len(),
                base.carrier.len()
            )));
        }
        let to_vec = carrier
            .labels()
            .iter()
            .map(|l| Ok(vector_index(&parse_vector(l, q, dim)?, q)))
            .collect::<Result<Vec<_>>>()?;
        let mut nbhd = vec![PointSet::empty(carrier.len()); carrier.len()];
        for x in carrier.points() {
            nbhd[to_vec[x]] = PointSet::from_iter(carrier.len(), carrier.nbhd(x).iter().map(|y| to_vec[y]));
        }
        let space = FinSpace::from_nbhds(base.carrier.labels().to_vec(), nbhd)?;
        Ok(FqSpace { carrier: Arc::new(space), ..base })
    }

    pub fn is_discrete(&self) -> bool {
        self.carrier.nbhds().iter().all(|s| s.len() == 1)
    }

    pub fn vector_count(&self) -> usize {
        self.carrier.len()
    }

    pub fn vector(&self, i: usize) -> Vector {
        vector_at(i, self.q, self.dim)
    }

    pub fn index(&self, v: &[u32]) -> usize {
        vector_index(v, self.q)
    }

    pub fn parse(&self, s: &str) -> Result<usize> {
        Ok(self.index(&parse_vector(s, self.q, self.dim)?))
    }

    pub fn label(&self, i: usize) -> &str {
        self.carrier.label(i)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (mut u, v) = (self.vector(a), self.vector(b));
        add_scaled(&mut u, &v, 1, self.q);
        self.index(&u)
    }

    pub fn scale(&self, c: u32, a: usize) -> usize {
        let v: Vector = self.vector(a).into_iter().map(|x| x * c % self.q).collect();
        self.index(&v)
    }
}

/// Coset representatives of `A / V` and the reduction map.
#[derive(Debug, Clone)]
pub struct QuotientFiber {
    pub subspace: FqSubspace,
    pub reps: Vec<Vector>,
}

impl QuotientFiber {
    pub fn new(v: &FqSubspace) -> QuotientFiber {
        QuotientFiber { subspace: v.clone(), reps: v.coset_reps() }
    }

    pub fn reduce(&self, a: &[u32]) -> Vector {
        self.subspace.reduce(a)
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{check_join_preserving, verify_adjunction, Bound};

    fn sub(basis: &[&str]) -> FqSubspace {
        FqSubspace::from_strings(2, 2, basis).unwrap()
    }

    #[test]
    fn subspace_ops_over_f2() {
        let (p01, p10, p11) = (sub(&["01"]), sub(&["10"]), sub(&["11"]));
        assert_eq!(p01.sum(&p10).unwrap(), FqSubspace::whole(2, 2));
        assert_eq!(p01.intersect(&p11).unwrap(), FqSubspace::zero(2, 2));
        assert!(p11.contains(&[1, 1]).unwrap());
        assert!(!p11.contains(&[1, 0]).unwrap());
        assert_eq!(p01.key(), "1:01");
        assert_eq!(FqSubspace::whole(2, 2).key(), "2:1001");
        assert!(matches!(p01.sum(&FqSubspace::zero(2, 3)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn subspace_counts() {
        let caps = Caps::default();
        let count = |q, n| enumerate_subspaces(q, n, &caps).unwrap().len();
        assert_eq!(count(2, 1), 2);
        assert_eq!(count(2, 2), 5);
        assert_eq!(count(2, 3), 16);
        assert_eq!(count(3, 1), 2);
        assert_eq!(count(3, 2), 6);
        assert_eq!(count(5, 0), 1);
        assert!(matches!(enumerate_subspaces(4, 2, &caps), Err(Error::NotPrime(4))));
    }

    #[test]
    fn canonical_order() {
        let keys: Vec<String> =
            enumerate_subspaces(2, 2, &Caps::default()).unwrap().iter().map(FqSubspace::key).collect();
        assert_eq!(keys, vec!["0:", "1:01", "1:10", "1:11", "2:1001"]);
    }

    #[test]
    fn lattice_join_is_span() {
        let sl = SubLattice::new(2, 2, &Caps::default()).unwrap();
        let w = crate::order::join_meet(&sl.lattice, &["1:01", "1:10"], Bound::Join).unwrap();
        assert_eq!(sl.lattice.label(w), "2:1001");
        let o = crate::order::join_meet(&sl.lattice, &["1:01", "1:11"], Bound::Meet).unwrap();
        assert_eq!(o, sl.zero());
    }

    #[test]
    fn projection_image_and_preimage() {
        let caps = Caps::default();
        let f = FqLinearMap::new(2, 2, vec![vec![1, 0]]).unwrap();
        assert_eq!(f.image(&sub(&["01"])).unwrap(), FqSubspace::zero(2, 1));
        assert_eq!(f.preimage(&FqSubspace::zero(2, 1)).unwrap(), sub(&["01"]));
        assert_eq!(f.kernel(), sub(&["01"]));
        let id = FqLinearMap::identity(2, 2);
        assert_eq!(id.image(&sub(&["11"])).unwrap(), sub(&["11"]));

        let a = SubLattice::new(2, 2, &caps).unwrap();
        let b = SubLattice::new(2, 1, &caps).unwrap();
        let img = image_map(&f, &a, &b).unwrap();
        let pre = preimage_map(&f, &a, &b).unwrap();
        assert!(check_join_preserving(&img, &caps).passed());
        assert!(verify_adjunction(&img, &pre).unwrap().passed());
        let right = crate::order::adjoint(&img, crate::order::Side::RightOfJoinPreserving, &caps).unwrap();
        assert_eq!(right, pre);
        assert_eq!(a.lattice.label(pre.apply(b.zero())), "1:01");
    }

    #[test]
    fn quotient_fibers() {
        assert_eq!(QuotientFiber::new(&FqSubspace::zero(2, 1)).len(), 2);
        assert_eq!(QuotientFiber::new(&FqSubspace::whole(2, 1)).len(), 1);
        let fib = QuotientFiber::new(&sub(&["01"]));
        assert_eq!(fib.len(), 2);
        assert_eq!(fib.reduce(&[0, 1]), vec![0, 0]);
        assert_eq!(fib.reduce(&[1, 1]), vec![1, 0]);
        let f3 = FqSubspace::from_strings(3, 2, &["12"]).unwrap();
        assert_eq!(QuotientFiber::new(&f3).len(), 3);
        assert_eq!(f3.reduce(&[2, 1]), vec![0, 0]);
    }

    #[test]
    fn vector_encoding() {
        assert_eq!(vector_at(1, 2, 2), vec![0, 1]);
        assert_eq!(vector_index(&[1, 0], 2), 2);
        assert_eq!(format_vector(&[1, 0, 1]), "101");
        assert!(parse_vector("012", 2, 3).is_err());
        assert!(matches!(parse_vector("01", 2, 3), Err(Error::DimensionMismatch { .. })));
        assert_eq!(parse_vector("a0", 11, 2).unwrap(), vec![10, 0]);
    }

    #[test]
    fn composition_and_enumeration_of_maps() {
        let caps = Caps::default();
        let maps = all_linear_maps(2, 2, 1, &caps).unwrap();
        assert_eq!(maps.len(), 4);
        assert_eq!(all_linear_maps(2, 0, 2, &caps).unwrap().len(), 1);
        let f = FqLinearMap::new(2, 2, vec![vec![1, 1]]).unwrap();
        let g = FqLinearMap::new(2, 1, vec![vec![1], vec![0]]).unwrap();
        let gf = f.then(&g).unwrap();
        assert_eq!(gf.apply(&[1, 0]), vec![1, 0]);
        assert_eq!(gf.apply(&[1, 1]), vec![0, 0]);
    }

    #[test]
    fn carriers() {
        let d = FqSpace::discrete(2, 1).unwrap();
        assert!(d.is_discrete());
        let i = FqSpace::indiscrete(2, 1).unwrap();
        assert!(!i.is_discrete());
        let reordered = FinSpace::discrete(vec!["1".into(), "0".into()]);
        let c = FqSpace::with_carrier(2, 1, &reordered).unwrap();
        assert_eq!(c.carrier.labels(), &["0".to_string(), "1".to_string()]);
    }
}
