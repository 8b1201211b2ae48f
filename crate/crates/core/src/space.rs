//! Finite topological spaces.
//!
//! A finite topology is determined by the minimal open neighbourhood `N(x)` of
//! each point: the opens are exactly the unions of these. `FinSpace` stores the
//! neighbourhood table as its canonical representation, so two topologies on the
//! same points are equal iff their tables are equal, and the family of opens is
//! materialized on demand (in canonical order) under an enumeration cap.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::bits::PointSet;
use crate::frame::{spectrum_space, Locale, Spectrum};
use crate::order::{verify_adjunction, FinLattice, LatticeMap};
use crate::{Caps, Check, Error, Result};

#[derive(Debug, Clone)]
pub struct FinSpace {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    nbhd: Vec<PointSet>,
    subbasis: Option<Vec<PointSet>>,
}

impl PartialEq for FinSpace {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.nbhd == other.nbhd
    }
}

impl Eq for FinSpace {}

fn index_points(labels: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::DuplicateId(l.clone()));
        }
    }
    Ok(index)
}

fn check_universe(n: usize, sets: &[PointSet]) -> Result<()> {
    for s in sets {
        if s.universe() != n {
            return Err(Error::OutOfRange(s.universe().max(n)));
        }
    }
    Ok(())
}

impl FinSpace {
    /// Smallest topology containing `subbasis`; the subbasis is recorded.
    pub fn generate(labels: Vec<String>, subbasis: Vec<PointSet>) -> Result<FinSpace> {
        let n = labels.len();
        check_universe(n, &subbasis)?;
        let nbhd = (0..n)
            .map(|x| {
                let mut s = PointSet::full(n);
                for b in subbasis.iter().filter(|b| b.contains(x)) {
                    s.intersect_with(b);
                }
                s
            })
            .collect();
        let index = index_points(&labels)?;
        Ok(FinSpace { labels, index, nbhd, subbasis: Some(subbasis) })
    }

    /// Topology generated by a family of opens (closed under unions and
    /// intersections if it was not already).
    pub fn from_opens(labels: Vec<String>, opens: Vec<PointSet>) -> Result<FinSpace> {
        let mut space = FinSpace::generate(labels, opens)?;
        space.subbasis = None;
        Ok(space)
    }

    /// Builds a space from a table of minimal neighbourhoods, which must satisfy
    /// `x ∈ N(x)` and `y ∈ N(x) ⇒ N(y) ⊆ N(x)`.
    pub fn from_nbhds(labels: Vec<String>, nbhd: Vec<PointSet>) -> Result<FinSpace> {
        let n = labels.len();
        if nbhd.len() != n {
            return Err(Error::Mismatch(format!("{} neighbourhoods for {n} points", nbhd.len())));
        }
        check_universe(n, &nbhd)?;
        for (x, nx) in nbhd.iter().enumerate() {
            if !nx.contains(x) || nx.iter().any(|y| !nbhd[y].is_subset(nx)) {
                return Err(Error::Invariant(format!("invalid neighbourhood table at point {x}")));
            }
        }
        let index = index_points(&labels)?;
        Ok(FinSpace { labels, index, nbhd, subbasis: None })
    }

    pub fn discrete(labels: Vec<String>) -> FinSpace {
        let n = labels.len();
        let nbhd = (0..n).map(|x| PointSet::singleton(n, x)).collect();
        FinSpace::from_nbhds(labels, nbhd).expect("discrete topology")
    }

    pub fn indiscrete(labels: Vec<String>) -> FinSpace {
        let n = labels.len();
        FinSpace::from_nbhds(labels, vec![PointSet::full(n); n]).expect("indiscrete topology")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn set_of(&self, labels: &[&str]) -> Result<PointSet> {
        let mut s = PointSet::empty(self.len());
        for l in labels {
            s.insert(self.index_of(l)?);
        }
        Ok(s)
    }

    /// Smallest open set containing `x`.
    pub fn nbhd(&self, x: usize) -> &PointSet {
        &self.nbhd[x]
    }

    pub fn nbhds(&self) -> &[PointSet] {
        &self.nbhd
    }

    pub fn subbasis(&self) -> Option<&[PointSet]> {
        self.subbasis.as_deref()
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.len())
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet::empty(self.len())
    }

    pub fn is_open(&self, s: &PointSet) -> bool {
        s.iter().all(|x| self.nbhd[x].is_subset(s))
    }

    pub fn is_closed(&self, s: &PointSet) -> bool {
        self.is_open(&s.complement())
    }

    pub fn interior(&self, s: &PointSet) -> PointSet {
        PointSet::from_iter(self.len(), s.iter().filter(|&x| self.nbhd[x].is_subset(s)))
    }

    pub fn closure(&self, s: &PointSet) -> PointSet {
        PointSet::from_iter(self.len(), self.points().filter(|&x| self.nbhd[x].intersects(s)))
    }

    /// Smallest open set containing `s`.
    pub fn open_hull(&self, s: &PointSet) -> PointSet {
        let mut out = PointSet::empty(self.len());
        for x in s.iter() {
            out.union_with(&self.nbhd[x]);
        }
        out
    }

    pub fn point_closure(&self, x: usize) -> PointSet {
        self.closure(&PointSet::singleton(self.len(), x))
    }

    /// Specialization preorder: `x ⊑ y` iff every open containing `x` contains
    /// `y`, equivalently `x ∈ cl{y}`.
    pub fn specializes(&self, x: usize, y: usize) -> bool {
        self.nbhd[x].contains(y)
    }

    /// All open sets in canonical order (by size, then lexicographically).
    pub fn opens(&self, caps: &Caps) -> Result<Vec<PointSet>> {
        let mut seen: HashSet<PointSet> = HashSet::new();
        let mut list = vec![self.empty_set()];
        seen.insert(self.empty_set());
        for x in self.points() {
            let k = list.len();
            for i in 0..k {
                let u = list[i].union(&self.nbhd[x]);
                if !seen.contains(&u) {
                    seen.insert(u.clone());
                    list.push(u);
                    caps.check("open sets", list.len() as u128)?;
                }
            }
        }
        list.sort();
        Ok(list)
    }

    /// Subspace topology on `subset`, points relabelled in index order.
    pub fn restrict(&self, subset: &PointSet) -> FinSpace {
        let keep: Vec<usize> = subset.to_vec();
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let labels = keep.iter().map(|&x| self.labels[x].clone()).collect();
        let nbhd = keep
            .iter()
            .map(|&x| PointSet::from_iter(keep.len(), self.nbhd[x].iter().filter_map(|y| pos.get(&y).copied())))
            .collect();
        FinSpace::from_nbhds(labels, nbhd).expect("subspace topology")
    }
}

/// A point map between finite spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CtsMap {
    pub source: Arc<FinSpace>,
    pub target: Arc<FinSpace>,
    pub table: Vec<usize>,
}

impl CtsMap {
    /// A point map; continuity is not implied, see [`CtsMap::check_continuous`].
    pub fn new(source: Arc<FinSpace>, target: Arc<FinSpace>, table: Vec<usize>) -> Result<CtsMap> {
        if table.len() != source.len() {
            return Err(Error::Mismatch(format!("{} images for {} points", table.len(), source.len())));
        }
        if let Some(&bad) = table.iter().find(|&&y| y >= target.len()) {
            return Err(Error::OutOfRange(bad));
        }
        Ok(CtsMap { source, target, table })
    }

    /// A point map that must be continuous.
    pub fn continuous(source: Arc<FinSpace>, target: Arc<FinSpace>, table: Vec<usize>) -> Result<CtsMap> {
        let f = CtsMap::new(source, target, table)?;
        let c = f.check_continuous();
        if c.failed() {
            return Err(Error::NotContinuous(c.witness));
        }
        Ok(f)
    }

    pub fn from_labels(source: Arc<FinSpace>, target: Arc<FinSpace>, pairs: &[(&str, &str)]) -> Result<CtsMap> {
        let mut table = vec![None; source.len()];
        for (x, y) in pairs {
            table[source.index_of(x)?] = Some(target.index_of(y)?);
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::Mismatch(format!("no image for `{}`", source.label(i)))))
            .collect::<Result<Vec<_>>>()?;
        CtsMap::new(source, target, table)
    }

    pub fn identity(x: Arc<FinSpace>) -> CtsMap {
        let table = x.points().collect();
        CtsMap { source: x.clone(), target: x, table }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn image(&self, s: &PointSet) -> PointSet {
        PointSet::from_iter(self.target.len(), s.iter().map(|x| self.table[x]))
    }

    pub fn preimage(&self, s: &PointSet) -> PointSet {
        PointSet::from_iter(self.source.len(), self.source.points().filter(|&x| s.contains(self.table[x])))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &CtsMap) -> Result<CtsMap> {
        if *self.target != *other.source {
            return Err(Error::Mismatch("composition of non-composable maps".into()));
        }
        let table = self.table.iter().map(|&y| other.table[y]).collect();
        Ok(CtsMap { source: self.source.clone(), target: other.target.clone(), table })
    }

    /// True iff every open has an open preimage. The witness is a minimal
    /// neighbourhood of the target whose preimage is not open.
    pub fn check_continuous(&self) -> Check {
        for x in self.source.points() {
            let fx = self.table[x];
            if self.source.nbhd(x).iter().any(|z| !self.target.nbhd(fx).contains(self.table[z])) {
                return Check::fail("continuous", self.target.nbhd(fx).labels(self.target.labels()));
            }
        }
        Check::pass("continuous")
    }

    /// True iff every open has an open image. The witness is the image of a
    /// minimal neighbourhood that is not open.
    pub fn check_open(&self) -> Check {
        for x in self.source.points() {
            let img = self.image(self.source.nbhd(x));
            if !self.target.is_open(&img) {
                return Check::fail("open map", img.labels(self.target.labels()));
            }
        }
        Check::pass("open map")
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = PointSet::empty(self.target.len());
        self.table.iter().all(|&y| {
            let fresh = !seen.contains(y);
            seen.insert(y);
            fresh
        })
    }

    pub fn is_surjective(&self) -> bool {
        PointSet::from_iter(self.target.len(), self.table.iter().copied()).is_full()
    }

    pub fn is_homeomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective() && self.check_continuous().passed() && self.check_open().passed()
    }
}

/// The frame of opens of a finite space, with the open ↔ element table.
#[derive(Debug, Clone)]
pub struct OpenLocale {
    pub space: Arc<FinSpace>,
    pub opens: Vec<PointSet>,
    index: HashMap<PointSet, usize>,
    pub locale: Locale,
}

impl OpenLocale {
    pub fn lattice(&self) -> &Arc<FinLattice> {
        self.locale.lattice()
    }

    pub fn element_of(&self, open: &PointSet) -> Option<usize> {
        self.index.get(open).copied()
    }

    pub fn element(&self, open: &PointSet) -> Result<usize> {
        self.element_of(open)
            .ok_or_else(|| Error::Invariant(format!("{:?} is not an open set", open.labels(self.space.labels()))))
    }

    pub fn open(&self, element: usize) -> &PointSet {
        &self.opens[element]
    }
}

/// `𝒪(X)` as a frame ordered by inclusion.
pub fn open_locale(x: Arc<FinSpace>, caps: &Caps) -> Result<OpenLocale> {
    let opens = x.opens(caps)?;
    caps.check("open lattice table", (opens.len() as u128).pow(2))?;
    let index: HashMap<PointSet, usize> = opens.iter().cloned().enumerate().map(|(i, u)| (u, i)).collect();
    let labels = opens.iter().map(|u| u.braced(x.labels())).collect();
    let lattice = FinLattice::from_parts(
        labels,
        |a, b| opens[a].is_subset(&opens[b]),
        |a, b| index[&opens[a].union(&opens[b])],
        |a, b| index[&opens[a].intersection(&opens[b])],
    )?;
    let locale = Locale::from_distributive(Arc::new(lattice));
    Ok(OpenLocale { space: x, opens, index, locale })
}

/// Inverse image `φ⁻¹ : 𝒪(X) → 𝒪(Y)` of a continuous `φ : Y → X`.
pub fn inverse_image(f: &CtsMap, ox: &OpenLocale, oy: &OpenLocale) -> Result<LatticeMap> {
    let c = f.check_continuous();
    if c.failed() {
        return Err(Error::NotContinuous(c.witness));
    }
    let table = ox.opens.iter().map(|u| oy.element(&f.preimage(u))).collect::<Result<Vec<_>>>()?;
    LatticeMap::new(ox.lattice().clone(), oy.lattice().clone(), table)
}

/// Direct image `φ_! : 𝒪(Y) → 𝒪(X)` of a continuous open `φ : Y → X`,
/// verified left adjoint to `φ⁻¹`.
pub fn direct_image(f: &CtsMap, oy: &OpenLocale, ox: &OpenLocale) -> Result<LatticeMap> {
    let c = f.check_open();
    if c.failed() {
        return Err(Error::NotOpenMap(c.witness));
    }
    let table = oy.opens.iter().map(|u| ox.element(&f.image(u))).collect::<Result<Vec<_>>>()?;
    let shriek = LatticeMap::new(oy.lattice().clone(), ox.lattice().clone(), table)?;
    let inv = inverse_image(f, ox, oy)?;
    let adj = verify_adjunction(&shriek, &inv)?;
    if adj.failed() {
        return Err(Error::Invariant(format!("direct image not left adjoint to inverse image: {:?}", adj.witness)));
    }
    Ok(shriek)
}

#[derive(Debug, Clone, Serialize)]
pub struct SeparationReport {
    pub t0: bool,
    pub t1: bool,
    pub sober: bool,
    /// Pairs `x ⊑ y` with `x ≠ y`.
    pub specialization: Vec<(String, String)>,
}

pub fn separation_report(x: &Arc<FinSpace>, caps: &Caps) -> Result<SeparationReport> {
    let mut specialization = Vec::new();
    let mut t0 = true;
    for a in x.points() {
        for b in x.points().filter(|&b| b != a) {
            if x.specializes(a, b) {
                specialization.push((x.label(a).to_string(), x.label(b).to_string()));
                if x.specializes(b, a) {
                    t0 = false;
                }
            }
        }
    }
    let t1 = specialization.is_empty();
    let sob = soberify(x.clone(), caps)?;
    Ok(SeparationReport { t0, t1, sober: sob.is_bijective(), specialization })
}

/// The soberification `sob(x) = X ∖ cl{x}` into the spectrum of `𝒪(X)`.
#[derive(Debug, Clone)]
pub struct Soberification {
    pub open_locale: OpenLocale,
    pub spectrum: Spectrum,
    pub map: CtsMap,
    pub injective: bool,
    pub surjective: bool,
    pub open_map: bool,
}

impl Soberification {
    pub fn is_bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

pub fn soberify(x: Arc<FinSpace>, caps: &Caps) -> Result<Soberification> {
    let ol = open_locale(x.clone(), caps)?;
    let spectrum = spectrum_space(&ol.locale)?;
    let table = x
        .points()
        .map(|p| {
            let elem = ol.element(&x.point_closure(p).complement())?;
            spectrum
                .point_of_element(elem)
                .ok_or_else(|| Error::Invariant(format!("complement of cl{{{}}} is not prime", x.label(p))))
        })
        .collect::<Result<Vec<_>>>()?;
    let map = CtsMap::new(x.clone(), spectrum.space.clone(), table)?;
    if map.check_continuous().failed() {
        return Err(Error::Invariant("soberification is not continuous".into()));
    }
    let injective = map.is_injective();
    let surjective = map.is_surjective();
    let open_map = map.check_open().passed();
    if surjective && !open_map {
        return Err(Error::Invariant("surjective soberification is not open".into()));
    }
    Ok(Soberification { open_locale: ol, spectrum, map, injective, surjective, open_map })
}

/// Product space with points `(x,y)` in row-major order.
pub fn product(x: &FinSpace, y: &FinSpace) -> FinSpace {
    let (n, m) = (x.len(), y.len());
    let mut labels = Vec::with_capacity(n * m);
    let mut nbhd = Vec::with_capacity(n * m);
    for a in x.points() {
        for b in y.points() {
            labels.push(format!("({},{})", x.label(a), y.label(b)));
            nbhd.push(PointSet::from_iter(
                n * m,
                x.nbhd(a).iter().flat_map(|a2| y.nbhd(b).iter().map(move |b2| a2 * m + b2)),
            ));
        }
    }
    FinSpace::from_nbhds(labels, nbhd).expect("product topology")
}

/// Product topology generated by the rectangle subbasis `{U×Y} ∪ {X×V}`,
/// materialized through subbasis generation.
pub fn product_by_subbasis(x: &FinSpace, y: &FinSpace, caps: &Caps) -> Result<FinSpace> {
    let (n, m) = (x.len(), y.len());
    let mut subbasis = Vec::new();
    for u in x.opens(caps)? {
        subbasis.push(PointSet::from_iter(n * m, u.iter().flat_map(|a| (0..m).map(move |b| a * m + b))));
    }
    for v in y.opens(caps)? {
        subbasis.push(PointSet::from_iter(n * m, (0..n).flat_map(|a| v.iter().map(move |b| a * m + b))));
    }
    let labels = x
        .points()
        .flat_map(|a| y.points().map(move |b| (a, b)))
        .map(|(a, b)| format!("({},{})", x.label(a), y.label(b)))
        .collect();
    FinSpace::generate(labels, subbasis)
}

/// Quotient topology along a surjective point map `x ↦ table[x]` onto
/// `labels`: a set is open iff its preimage is open.
pub fn quotient(x: &FinSpace, table: &[usize], labels: Vec<String>) -> Result<FinSpace> {
    let m = labels.len();
    if table.len() != x.len() {
        return Err(Error::Mismatch(format!("{} images for {} points", table.len(), x.len())));
    }
    if let Some(&bad) = table.iter().find(|&&y| y >= m) {
        return Err(Error::OutOfRange(bad));
    }
    let mut fibers = vec![PointSet::empty(x.len()); m];
    for (p, &y) in table.iter().enumerate() {
        fibers[y].insert(p);
    }
    if let Some(y) = fibers.iter().position(PointSet::is_empty) {
        return Err(Error::NotSurjective(labels[y].clone()));
    }
    let image = |s: &PointSet| PointSet::from_iter(m, s.iter().map(|p| table[p]));
    let saturate = |img: &PointSet| {
        let mut s = PointSet::empty(x.len());
        for y in img.iter() {
            s.union_with(&fibers[y]);
        }
        s
    };
    let nbhd = (0..m)
        .map(|y| {
            let mut cur = fibers[y].clone();
            loop {
                let next = saturate(&image(&x.open_hull(&cur)));
                if next == cur {
                    break image(&cur);
                }
                cur = next;
            }
        })
        .collect();
    FinSpace::from_nbhds(labels, nbhd)
}

/// All continuous maps `X → Y` in lexicographic table order, by backtracking on
/// the neighbourhood condition. The cap bounds the search nodes.
pub fn all_continuous_maps(x: &Arc<FinSpace>, y: &Arc<FinSpace>, caps: &Caps) -> Result<Vec<CtsMap>> {
    fn go(
        x: &FinSpace,
        y: &FinSpace,
        table: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        nodes: &mut u64,
        caps: &Caps,
    ) -> Result<()> {
        let i = table.len();
        if i == x.len() {
            out.push(table.clone());
            return Ok(());
        }
        for v in y.points() {
            *nodes += 1;
            caps.check("continuous map search nodes", *nodes as u128)?;
            let ok = (0..i).all(|j| {
                (!x.nbhd(i).contains(j) || y.nbhd(v).contains(table[j]))
                    && (!x.nbhd(j).contains(i) || y.nbhd(table[j]).contains(v))
            });
            if ok {
                table.push(v);
                go(x, y, table, out, nodes, caps)?;
                table.pop();
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    go(x, y, &mut Vec::new(), &mut out, &mut 0, caps)?;
    Ok(out.into_iter().map(|t| CtsMap { source: x.clone(), target: y.clone(), table: t }).collect())
}

/// Named small spaces used throughout tests and examples.
pub mod named {
    use super::*;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    /// Sierpiński space on `{x0, x1}` with opens `∅, {x1}, X`.
    pub fn sierpinski() -> FinSpace {
        let l = labels(&["x0", "x1"]);
        FinSpace::generate(l, vec![PointSet::singleton(2, 1)]).unwrap()
    }

    /// Discrete two-point space on `{y0, y1}`.
    pub fn discrete2() -> FinSpace {
        FinSpace::discrete(labels(&["y0", "y1"]))
    }

    /// Indiscrete two-point space on `{z0, z1}`.
    pub fn indiscrete2() -> FinSpace {
        FinSpace::indiscrete(labels(&["z0", "z1"]))
    }

    pub fn point() -> FinSpace {
        FinSpace::discrete(labels(&["*"]))
    }

    pub fn discrete(n: usize) -> FinSpace {
        FinSpace::discrete((0..n).map(|i| format!("p{i}")).collect())
    }

    /// Every topology on `{p0, .., p(n-1)}`, via transitive reflexive relations
    /// read as `y ∈ N(x)`. Optionally only the T0 ones.
    pub fn all_topologies(n: usize, t0_only: bool) -> Vec<FinSpace> {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
        let mut out = Vec::new();
        for mask in 0u64..1 << pairs.len() {
            let mut rel = vec![vec![false; n]; n];
            for (i, row) in rel.iter_mut().enumerate() {
                row[i] = true;
            }
            for (b, &(i, j)) in pairs.iter().enumerate() {
                rel[i][j] = mask >> b & 1 == 1;
            }
            let transitive = (0..n).all(|i| (0..n).all(|j| !rel[i][j] || (0..n).all(|k| !rel[j][k] || rel[i][k])));
            let antisymmetric = (0..n).all(|i| (0..n).all(|j| i == j || !(rel[i][j] && rel[j][i])));
            if !transitive || (t0_only && !antisymmetric) {
                continue;
            }
            let nbhd = rel.iter().map(|row| PointSet::from_iter(n, (0..n).filter(|&j| row[j]))).collect();
            out.push(FinSpace::from_nbhds((0..n).map(|i| format!("p{i}")).collect(), nbhd).expect("preorder"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn topology_counts() {
        let counts: Vec<usize> = (0..=3).map(|n| all_topologies(n, false).len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 29]);
        let t0: Vec<usize> = (0..=3).map(|n| all_topologies(n, true).len()).collect();
        assert_eq!(t0, vec![1, 1, 3, 19]);
    }

    #[test]
    fn continuous_map_counts() {
        let caps = Caps::default();
        let s = Arc::new(sierpinski());
        let d = Arc::new(discrete2());
        let i = Arc::new(indiscrete2());
        let count = |a: &Arc<FinSpace>, b: &Arc<FinSpace>| all_continuous_maps(a, b, &caps).unwrap().len();
        // Oracle: filter all |Y|^|X| tables by the continuity check.
        for (a, b) in [(&s, &s), (&s, &d), (&d, &s), (&i, &s), (&s, &i), (&d, &d)] {
            let brute = (0..b.len().pow(a.len() as u32))
                .filter(|&k| {
                    let table = (0..a.len()).map(|p| k / b.len().pow(p as u32) % b.len()).collect();
                    CtsMap::new(a.clone(), b.clone(), table).unwrap().check_continuous().passed()
                })
                .count();
            assert_eq!(count(a, b), brute);
        }
        assert_eq!(count(&s, &s), 3);
    }

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn sierpinski_from_subbasis() {
        let s = sierpinski();
        let opens = s.opens(&caps()).unwrap();
        let as_labels: Vec<Vec<String>> = opens.iter().map(|u| u.labels(s.labels())).collect();
        assert_eq!(as_labels, vec![vec![], vec!["x1".to_string()], vec!["x0".into(), "x1".into()]]);
        assert_eq!(s.subbasis().unwrap().len(), 1);
    }

    #[test]
    fn empty_subbasis_is_indiscrete() {
        let s = FinSpace::generate(vec!["a".into(), "b".into()], vec![]).unwrap();
        assert_eq!(s.opens(&caps()).unwrap().len(), 2);
        assert_eq!(s, FinSpace::indiscrete(vec!["a".into(), "b".into()]));
    }

    #[test]
    fn generation_rejects_out_of_range_sets() {
        let bad = PointSet::singleton(3, 2);
        assert!(FinSpace::generate(vec!["a".into(), "b".into()], vec![bad]).is_err());
    }

    #[test]
    fn closure_and_interior_in_sierpinski() {
        let s = sierpinski();
        let x0 = s.set_of(&["x0"]).unwrap();
        let x1 = s.set_of(&["x1"]).unwrap();
        assert_eq!(s.closure(&x0), x0);
        assert_eq!(s.closure(&x1), s.full());
        assert_eq!(s.interior(&s.full()), s.full());
        assert!(s.interior(&x0).is_empty());
    }

    #[test]
    fn continuity_witnesses() {
        let s = Arc::new(sierpinski());
        let d = Arc::new(FinSpace::discrete(vec!["x0".into(), "x1".into()]));
        let to_discrete = CtsMap::new(s.clone(), d.clone(), vec![0, 1]).unwrap();
        let c = to_discrete.check_continuous();
        assert!(c.failed());
        assert_eq!(c.witness, vec!["x0"]);
        let from_discrete = CtsMap::new(d, s, vec![0, 1]).unwrap();
        assert!(from_discrete.check_continuous().passed());
    }

    #[test]
    fn separation_of_small_spaces() {
        let s = separation_report(&Arc::new(sierpinski()), &caps()).unwrap();
        assert!(s.t0 && !s.t1 && s.sober);
        assert_eq!(s.specialization, vec![("x0".to_string(), "x1".to_string())]);
        let i = separation_report(&Arc::new(indiscrete2()), &caps()).unwrap();
        assert!(!i.t0 && !i.sober);
        let d = separation_report(&Arc::new(discrete2()), &caps()).unwrap();
        assert!(d.t1 && d.sober);
    }

    #[test]
    fn soberification_tables() {
        let s = Arc::new(sierpinski());
        let sob = soberify(s.clone(), &caps()).unwrap();
        assert!(sob.is_bijective());
        let names: Vec<&str> = sob.map.table.iter().map(|&p| sob.spectrum.space.label(p)).collect();
        assert_eq!(names, vec!["{x1}", "{}"]);

        let i = soberify(Arc::new(indiscrete2()), &caps()).unwrap();
        assert!(!i.injective && i.surjective && i.open_map);
        assert_eq!(i.spectrum.space.labels(), &["{}".to_string()]);

        let d = soberify(Arc::new(discrete2()), &caps()).unwrap();
        assert!(d.is_bijective());
        assert_eq!(d.spectrum.space.label(d.map.apply(0)), "{y1}");
    }

    #[test]
    fn open_locale_shapes() {
        let os = open_locale(Arc::new(sierpinski()), &caps()).unwrap();
        assert_eq!(os.lattice().len(), 3);
        assert!((0..3).all(|a| (0..3).all(|b| os.lattice().leq(a, b) == (a <= b))));
        let od = open_locale(Arc::new(discrete2()), &caps()).unwrap();
        assert_eq!(od.lattice().len(), 4);
    }

    #[test]
    fn direct_image_of_sob_is_left_adjoint() {
        let s = Arc::new(sierpinski());
        let sob = soberify(s.clone(), &caps()).unwrap();
        let target_ol = open_locale(sob.spectrum.space.clone(), &caps()).unwrap();
        let shriek = direct_image(&sob.map, &sob.open_locale, &target_ol).unwrap();
        let inv = inverse_image(&sob.map, &target_ol, &sob.open_locale).unwrap();
        assert!(verify_adjunction(&shriek, &inv).unwrap().passed());
    }

    #[test]
    fn direct_image_requires_open_map() {
        let s = Arc::new(sierpinski());
        let d = Arc::new(discrete2());
        let f = CtsMap::new(d.clone(), s.clone(), vec![0, 1]).unwrap();
        let od = open_locale(d, &caps()).unwrap();
        let os = open_locale(s, &caps()).unwrap();
        assert!(matches!(direct_image(&f, &od, &os), Err(Error::NotOpenMap(_))));
    }

    #[test]
    fn product_counts() {
        let p = product(&discrete2(), &sierpinski());
        assert_eq!(p.len(), 4);
        assert_eq!(p.opens(&caps()).unwrap().len(), 9);
        assert_eq!(p, product_by_subbasis(&discrete2(), &sierpinski(), &caps()).unwrap());
        let with_point = product(&sierpinski(), &point());
        assert_eq!(with_point.opens(&caps()).unwrap().len(), 3);
        assert!(with_point.specializes(0, 1));
    }

    #[test]
    fn quotients() {
        let q = quotient(&discrete2(), &[0, 0], vec!["*".into()]).unwrap();
        assert_eq!(q.len(), 1);
        assert!(matches!(quotient(&discrete2(), &[0, 0], vec!["a".into(), "b".into()]), Err(Error::NotSurjective(_))));
        // Collapsing the two copies of S inside D2 × S gives S back.
        let p = product(&discrete2(), &sierpinski());
        let back = quotient(&p, &[0, 1, 0, 1], vec!["x0".into(), "x1".into()]).unwrap();
        assert_eq!(back, sierpinski_unrecorded());
    }

    fn sierpinski_unrecorded() -> FinSpace {
        FinSpace::from_opens(vec!["x0".into(), "x1".into()], vec![PointSet::singleton(2, 1)]).unwrap()
    }

    #[test]
    fn opens_enumeration_respects_cap() {
        let d = named::discrete(5);
        assert_eq!(d.opens(&caps()).unwrap().len(), 32);
        assert!(matches!(d.opens(&Caps::uniform(10)), Err(Error::CapExceeded { .. })));
    }
}
