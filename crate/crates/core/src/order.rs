//! Finite posets, lattices, monotone maps and Galois adjunctions.
//!
//! Elements are indices into a canonical label list. The order is stored as a
//! bitset matrix (`up[a] = {b : a <= b}`), so order queries are O(1).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::bits::{subsets_by_size, PointSet};
use crate::{Caps, Check, Error, Result};

/// Order data as supplied by a user: ids plus a generating set of `a <= b` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RawOrder {
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
}

impl RawOrder {
    pub fn new<S: Into<String>>(elements: impl IntoIterator<Item = S>, leq: &[(&str, &str)]) -> Self {
        RawOrder {
            elements: elements.into_iter().map(Into::into).collect(),
            leq: leq.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        }
    }
}

/// Pairs added while closing a raw relation reflexively and transitively.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ClosureNotes {
    pub added_reflexive: usize,
    pub added_transitive: usize,
}

#[derive(Debug, Clone)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<PointSet>,
    down: Vec<PointSet>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.up == other.up
    }
}

impl Eq for Poset {}

fn index_labels(labels: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::DuplicateId(l.clone()));
        }
    }
    Ok(index)
}

impl Poset {
    /// Closes a raw relation reflexively and transitively, then checks antisymmetry.
    pub fn close(raw: &RawOrder) -> Result<(Poset, ClosureNotes)> {
        let labels = raw.elements.clone();
        let index = index_labels(&labels)?;
        let n = labels.len();
        let mut up = vec![PointSet::empty(n); n];
        let mut given = 0usize;
        for (a, b) in &raw.leq {
            let ia = *index.get(a).ok_or_else(|| Error::UnknownElement(a.clone()))?;
            let ib = *index.get(b).ok_or_else(|| Error::UnknownElement(b.clone()))?;
            if !up[ia].contains(ib) {
                up[ia].insert(ib);
                given += 1;
            }
        }
        let mut notes = ClosureNotes::default();
        for (i, row) in up.iter_mut().enumerate() {
            if !row.contains(i) {
                row.insert(i);
                notes.added_reflexive += 1;
            }
        }
        // Warshall on bitset rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        let total: usize = up.iter().map(PointSet::len).sum();
        notes.added_transitive = total - given - notes.added_reflexive;
        let poset = Poset::from_rows(labels, index, up)?;
        Ok((poset, notes))
    }

    /// Builds a poset from a relation that is already reflexive and transitive.
    pub fn from_relation(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Poset> {
        let index = index_labels(&labels)?;
        let n = labels.len();
        let up = (0..n).map(|a| PointSet::from_iter(n, (0..n).filter(|&b| leq(a, b)))).collect();
        Poset::from_rows(labels, index, up)
    }

    fn from_rows(labels: Vec<String>, index: HashMap<String, usize>, up: Vec<PointSet>) -> Result<Poset> {
        let n = labels.len();
        let mut down = vec![PointSet::empty(n); n];
        for (a, row) in up.iter().enumerate() {
            for b in row.iter() {
                down[b].insert(a);
            }
        }
        for a in 0..n {
            for b in up[a].iter() {
                if b != a && up[b].contains(a) {
                    return Err(Error::NotAntisymmetric(labels[a].clone(), labels[b].clone()));
                }
            }
        }
        Ok(Poset { labels, index, up, down })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    /// Least element of `set`, if it has one.
    pub fn least_of(&self, set: &PointSet) -> Option<usize> {
        let cand = set.iter().min_by_key(|&c| self.down[c].len())?;
        set.is_subset(&self.up[cand]).then_some(cand)
    }

    /// Greatest element of `set`, if it has one.
    pub fn greatest_of(&self, set: &PointSet) -> Option<usize> {
        let cand = set.iter().min_by_key(|&c| self.up[c].len())?;
        set.is_subset(&self.down[cand]).then_some(cand)
    }

    fn upper_bounds(&self, elems: &[usize]) -> PointSet {
        let mut s = PointSet::full(self.len());
        for &e in elems {
            s.intersect_with(&self.up[e]);
        }
        s
    }

    fn lower_bounds(&self, elems: &[usize]) -> PointSet {
        let mut s = PointSet::full(self.len());
        for &e in elems {
            s.intersect_with(&self.down[e]);
        }
        s
    }
}

/// A finite lattice (equivalently, a finite sup-lattice) with cached join and
/// meet tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinLattice {
    poset: Poset,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl FinLattice {
    pub fn from_raw(raw: &RawOrder) -> Result<FinLattice> {
        let (poset, _) = Poset::close(raw)?;
        FinLattice::from_poset(poset)
    }

    pub fn from_poset(poset: Poset) -> Result<FinLattice> {
        let n = poset.len();
        let bottom = poset.least_of(&PointSet::full(n)).ok_or_else(|| Error::NotALattice("no least element".into()))?;
        let top =
            poset.greatest_of(&PointSet::full(n)).ok_or_else(|| Error::NotALattice("no greatest element".into()))?;
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let j = poset.least_of(&poset.upper_bounds(&[a, b])).ok_or_else(|| {
                    Error::NotALattice(format!(
                        "`{}` and `{}` have no least upper bound",
                        poset.labels[a], poset.labels[b]
                    ))
                })?;
                let m = poset.greatest_of(&poset.lower_bounds(&[a, b])).ok_or_else(|| {
                    Error::NotALattice(format!(
                        "`{}` and `{}` have no greatest lower bound",
                        poset.labels[a], poset.labels[b]
                    ))
                })?;
                join[a * n + b] = j;
                join[b * n + a] = j;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
            }
        }
        Ok(FinLattice { poset, join, meet, bottom, top })
    }

    /// Builds a lattice whose order and binary operations are known by
    /// construction (inclusion of opens, of subspaces, ...).
    pub fn from_parts(
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
        join: impl Fn(usize, usize) -> usize,
        meet: impl Fn(usize, usize) -> usize,
    ) -> Result<FinLattice> {
        let poset = Poset::from_relation(labels, leq)?;
        let n = poset.len();
        let bottom = poset.least_of(&PointSet::full(n)).ok_or_else(|| Error::NotALattice("no least element".into()))?;
        let top =
            poset.greatest_of(&PointSet::full(n)).ok_or_else(|| Error::NotALattice("no greatest element".into()))?;
        let mut jt = vec![0; n * n];
        let mut mt = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                jt[a * n + b] = join(a, b);
                mt[a * n + b] = meet(a, b);
            }
        }
        Ok(FinLattice { poset, join: jt, meet: mt, bottom, top })
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.poset.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.poset.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.poset.index.get(label).copied().ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn up(&self, a: usize) -> &PointSet {
        &self.poset.up[a]
    }

    pub fn down(&self, a: usize) -> &PointSet {
        &self.poset.down[a]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    /// Join of a family; the empty join is the bottom element.
    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet of a family; the empty meet is the top element.
    pub fn meet_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Upper covers of `a` (Hasse diagram edges out of `a`).
    pub fn covers(&self, a: usize) -> Vec<usize> {
        self.up(a)
            .iter()
            .filter(|&b| b != a)
            .filter(|&b| !self.up(a).iter().any(|c| c != a && c != b && self.leq(c, b)))
            .collect()
    }

    pub fn names(&self, items: &[usize]) -> Vec<String> {
        items.iter().map(|&i| self.label(i).to_string()).collect()
    }
}

/// Strength of the axioms checked by [`validate_lattice`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Poset,
    Suplattice,
    Frame,
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "poset" => Ok(Level::Poset),
            "suplattice" | "sup-lattice" => Ok(Level::Suplattice),
            "frame" | "locale" => Ok(Level::Frame),
            other => Err(Error::InvalidInput(vec![format!("unknown level `{other}`")])),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub level: Level,
    pub closure: ClosureNotes,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const CHECK_PARTIAL_ORDER: &str = "partial order";
pub const CHECK_LEAST: &str = "least element";
pub const CHECK_PAIRWISE_JOINS: &str = "pairwise joins";
pub const CHECK_BINARY_DISTRIBUTIVITY: &str = "binary distributivity";
pub const CHECK_FRAME_DISTRIBUTIVITY: &str = "frame distributivity";

/// Validates raw order data at the requested level.
///
/// Structural defects (duplicate or unknown ids, a non-antisymmetric relation)
/// are errors; axiom failures are reported as failed checks with witnesses.
pub fn validate_lattice(raw: &RawOrder, level: Level, caps: &Caps) -> Result<ValidationReport> {
    let (poset, closure) = Poset::close(raw)?;
    let mut checks = Vec::new();
    let mut po = Check::pass(CHECK_PARTIAL_ORDER);
    if closure.added_reflexive + closure.added_transitive > 0 {
        po = po.with_note(format!(
            "closed by loader: {} reflexive and {} transitive pairs added",
            closure.added_reflexive, closure.added_transitive
        ));
    }
    checks.push(po);
    if level == Level::Poset {
        return Ok(ValidationReport { level, closure, checks });
    }

    let n = poset.len();
    let least = poset.least_of(&PointSet::full(n));
    checks.push(match least {
        Some(_) => Check::pass(CHECK_LEAST),
        None => Check::fail(CHECK_LEAST, Vec::new()).with_note("the empty subset has no join"),
    });
    let mut missing = None;
    'outer: for a in 0..n {
        for b in a + 1..n {
            if poset.least_of(&poset.upper_bounds(&[a, b])).is_none() {
                missing = Some((a, b));
                break 'outer;
            }
        }
    }
    checks.push(match missing {
        None => Check::pass(CHECK_PAIRWISE_JOINS),
        Some((a, b)) => Check::fail(CHECK_PAIRWISE_JOINS, vec![poset.labels[a].clone(), poset.labels[b].clone()])
            .with_note("no least upper bound"),
    });
    if level == Level::Suplattice {
        return Ok(ValidationReport { level, closure, checks });
    }

    if least.is_none() || missing.is_some() {
        checks.push(Check::unverified(CHECK_BINARY_DISTRIBUTIVITY, "not a lattice"));
        checks.push(Check::unverified(CHECK_FRAME_DISTRIBUTIVITY, "not a lattice"));
        return Ok(ValidationReport { level, closure, checks });
    }
    let lattice = FinLattice::from_poset(poset)?;
    checks.push(binary_distributivity(&lattice));
    checks.push(frame_distributivity_scan(&lattice, caps));
    Ok(ValidationReport { level, closure, checks })
}

/// `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)` for all triples. For finite lattices this
/// is equivalent to the frame law.
pub fn binary_distributivity(l: &FinLattice) -> Check {
    for a in l.elements() {
        for b in l.elements() {
            for c in b + 1..l.len() {
                let lhs = l.meet(a, l.join(b, c));
                let rhs = l.join(l.meet(a, b), l.meet(a, c));
                if lhs != rhs {
                    return Check::fail(CHECK_BINARY_DISTRIBUTIVITY, l.names(&[a, b, c])).with_note(format!(
                        "a∧(b∨c) = {} but (a∧b)∨(a∧c) = {}",
                        l.label(lhs),
                        l.label(rhs)
                    ));
                }
            }
        }
    }
    Check::pass(CHECK_BINARY_DISTRIBUTIVITY)
}

/// Literal scan of `a ∧ ⋁B = ⋁{a ∧ b : b ∈ B}` over every element `a` and every
/// subset `B`, smallest subsets first. Witness is `[a, B...]`.
pub fn frame_distributivity_scan(l: &FinLattice, caps: &Caps) -> Check {
    let n = l.len();
    let needed = (n as u128) << n.min(120);
    if n >= 64 || needed > caps.subset_scan as u128 {
        return Check::unverified(
            CHECK_FRAME_DISTRIBUTIVITY,
            format!("{n} elements: all-subsets scan exceeds cap {}", caps.subset_scan),
        );
    }
    for k in 0..=n {
        for a in l.elements() {
            for subset in crate::bits::combinations(n, k) {
                let sup = l.join_all(subset.iter().copied());
                let lhs = l.meet(a, sup);
                let rhs = l.join_all(subset.iter().map(|&b| l.meet(a, b)));
                if lhs != rhs {
                    let mut witness = vec![l.label(a).to_string()];
                    witness.extend(l.names(&subset));
                    return Check::fail(CHECK_FRAME_DISTRIBUTIVITY, witness).with_note(format!(
                        "a∧⋁B = {} but ⋁(a∧B) = {}",
                        l.label(lhs),
                        l.label(rhs)
                    ));
                }
            }
        }
    }
    Check::pass(CHECK_FRAME_DISTRIBUTIVITY)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Join,
    Meet,
}

/// Least upper bound or greatest lower bound of a set of labelled elements.
pub fn join_meet(l: &FinLattice, labels: &[&str], which: Bound) -> Result<usize> {
    let items = labels.iter().map(|s| l.index_of(s)).collect::<Result<Vec<_>>>()?;
    Ok(match which {
        Bound::Join => l.join_all(items),
        Bound::Meet => l.meet_all(items),
    })
}

/// A total function between the element sets of two lattices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMap {
    pub source: Arc<FinLattice>,
    pub target: Arc<FinLattice>,
    pub table: Vec<usize>,
}

impl LatticeMap {
    pub fn new(source: Arc<FinLattice>, target: Arc<FinLattice>, table: Vec<usize>) -> Result<Self> {
        if table.len() != source.len() {
            return Err(Error::Mismatch(format!(
                "table has {} entries for a source of {} elements",
                table.len(),
                source.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= target.len()) {
            return Err(Error::OutOfRange(bad));
        }
        Ok(LatticeMap { source, target, table })
    }

    pub fn from_labels(source: Arc<FinLattice>, target: Arc<FinLattice>, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut table = vec![None; source.len()];
        for (a, b) in pairs {
            table[source.index_of(a)?] = Some(target.index_of(b)?);
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::Mismatch(format!("no image for `{}`", source.label(i)))))
            .collect::<Result<Vec<_>>>()?;
        LatticeMap::new(source, target, table)
    }

    pub fn identity(l: Arc<FinLattice>) -> Self {
        let table = l.elements().collect();
        LatticeMap { source: l.clone(), target: l, table }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.table[a]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &LatticeMap) -> Result<LatticeMap> {
        if *self.target != *other.source {
            return Err(Error::Mismatch("composition of non-composable lattice maps".into()));
        }
        let table = self.table.iter().map(|&a| other.table[a]).collect();
        Ok(LatticeMap { source: self.source.clone(), target: other.target.clone(), table })
    }

    /// Pointwise order `self <= other`.
    pub fn pointwise_leq(&self, other: &LatticeMap) -> bool {
        self.table.iter().zip(&other.table).all(|(&a, &b)| self.target.leq(a, b))
    }

    pub fn is_bijective(&self) -> bool {
        let mut hit = PointSet::empty(self.target.len());
        for &v in &self.table {
            if hit.contains(v) {
                return false;
            }
            hit.insert(v);
        }
        hit.is_full()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MapProps {
    pub monotone: Check,
    pub join_preserving: Check,
    pub finite_meet_preserving: Check,
    pub all_meet_preserving: Check,
}

fn subset_scan_fits(n: usize, caps: &Caps) -> bool {
    n < 64 && (1u128 << n) <= caps.subset_scan as u128
}

pub fn check_monotone(f: &LatticeMap) -> Check {
    let l = &f.source;
    for a in l.elements() {
        for b in l.up(a).iter() {
            if !f.target.leq(f.apply(a), f.apply(b)) {
                return Check::fail("monotone", l.names(&[a, b]));
            }
        }
    }
    Check::pass("monotone")
}

/// Preservation of all joins. Uses a literal subset scan when within the cap,
/// otherwise the equivalent finite criterion (empty join and binary joins).
pub fn check_join_preserving(f: &LatticeMap, caps: &Caps) -> Check {
    let (l, m) = (&f.source, &f.target);
    if subset_scan_fits(l.len(), caps) {
        for s in subsets_by_size(l.len()) {
            if f.apply(l.join_all(s.iter().copied())) != m.join_all(s.iter().map(|&a| f.apply(a))) {
                return Check::fail("join preserving", l.names(&s));
            }
        }
        return Check::pass("join preserving");
    }
    if f.apply(l.bottom()) != m.bottom() {
        return Check::fail("join preserving", Vec::new());
    }
    for a in l.elements() {
        for b in a + 1..l.len() {
            if f.apply(l.join(a, b)) != m.join(f.apply(a), f.apply(b)) {
                return Check::fail("join preserving", l.names(&[a, b]));
            }
        }
    }
    Check::pass("join preserving").with_note("checked via empty and binary joins")
}

/// Preservation of the empty meet and binary meets.
pub fn check_finite_meet_preserving(f: &LatticeMap) -> Check {
    let (l, m) = (&f.source, &f.target);
    if f.apply(l.top()) != m.top() {
        return Check::fail("finite meet preserving", Vec::new());
    }
    for a in l.elements() {
        for b in a + 1..l.len() {
            if f.apply(l.meet(a, b)) != m.meet(f.apply(a), f.apply(b)) {
                return Check::fail("finite meet preserving", l.names(&[a, b]));
            }
        }
    }
    Check::pass("finite meet preserving")
}

pub fn check_all_meet_preserving(f: &LatticeMap, caps: &Caps) -> Check {
    let (l, m) = (&f.source, &f.target);
    if subset_scan_fits(l.len(), caps) {
        for s in subsets_by_size(l.len()) {
            if f.apply(l.meet_all(s.iter().copied())) != m.meet_all(s.iter().map(|&a| f.apply(a))) {
                return Check::fail("all meet preserving", l.names(&s));
            }
        }
        return Check::pass("all meet preserving");
    }
    let mut c = check_finite_meet_preserving(f);
    c.name = "all meet preserving".into();
    if c.passed() {
        c = c.with_note("checked via empty and binary meets");
    }
    c
}

pub fn map_props(f: &LatticeMap, caps: &Caps) -> MapProps {
    MapProps {
        monotone: check_monotone(f),
        join_preserving: check_join_preserving(f, caps),
        finite_meet_preserving: check_finite_meet_preserving(f),
        all_meet_preserving: check_all_meet_preserving(f, caps),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Right adjoint `g(b) = ⋁{a : f(a) <= b}` of a join-preserving `f`.
    RightOfJoinPreserving,
    /// Left adjoint `g(b) = ⋀{a : b <= f(a)}` of a meet-preserving `f`.
    LeftOfMeetPreserving,
}

pub fn adjoint(f: &LatticeMap, side: Side, caps: &Caps) -> Result<LatticeMap> {
    let (l, m) = (&f.source, &f.target);
    let table = match side {
        Side::RightOfJoinPreserving => {
            let c = check_join_preserving(f, caps);
            if c.failed() {
                return Err(Error::NotJoinPreserving(c.witness));
            }
            m.elements().map(|b| l.join_all(l.elements().filter(|&a| m.leq(f.apply(a), b)))).collect()
        }
        Side::LeftOfMeetPreserving => {
            let c = check_all_meet_preserving(f, caps);
            if c.failed() {
                return Err(Error::NotMeetPreserving(c.witness));
            }
            m.elements().map(|b| l.meet_all(l.elements().filter(|&a| m.leq(b, f.apply(a))))).collect()
        }
    };
    Ok(LatticeMap { source: m.clone(), target: l.clone(), table })
}

/// Right adjoint computed pointwise without a preservation precheck. Callers
/// must already know the map preserves joins.
pub(crate) fn right_adjoint_unchecked(f: &LatticeMap) -> LatticeMap {
    let (l, m) = (&f.source, &f.target);
    let table = m.elements().map(|b| l.join_all(l.elements().filter(|&a| m.leq(f.apply(a), b)))).collect();
    LatticeMap { source: m.clone(), target: l.clone(), table }
}

/// Checks `f(a) <= b ⟺ a <= g(b)` for all pairs, forward implication first.
pub fn verify_adjunction(f: &LatticeMap, g: &LatticeMap) -> Result<Check> {
    if *f.source != *g.target || *f.target != *g.source {
        return Err(Error::Mismatch("f: L → M needs g: M → L".into()));
    }
    let (l, m) = (&f.source, &f.target);
    for a in l.elements() {
        for b in m.elements() {
            if m.leq(f.apply(a), b) && !l.leq(a, g.apply(b)) {
                return Ok(Check::fail("adjunction", vec![l.label(a).into(), m.label(b).into()])
                    .with_note("f(a) <= b but a is not <= g(b)"));
            }
        }
    }
    for a in l.elements() {
        for b in m.elements() {
            if l.leq(a, g.apply(b)) && !m.leq(f.apply(a), b) {
                return Ok(Check::fail("adjunction", vec![l.label(a).into(), m.label(b).into()])
                    .with_note("a <= g(b) but f(a) is not <= b"));
            }
        }
    }
    Ok(Check::pass("adjunction"))
}

impl fmt::Display for LatticeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .table
            .iter()
            .enumerate()
            .map(|(a, &b)| format!("{}↦{}", self.source.label(a), self.target.label(b)))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Chain `0 < 1 < ... < n-1` with labels `c0..` unless `labels` is given.
pub fn chain(labels: &[&str]) -> FinLattice {
    let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
    FinLattice::from_parts(labels, |a, b| a <= b, |a, b| a.max(b), |a, b| a.min(b)).expect("chains are lattices")
}

/// Powerset lattice of `{0..n}` with elements indexed by bitmask.
pub fn boolean(n: usize) -> FinLattice {
    let labels = (0..1usize << n)
        .map(|m| {
            let members: Vec<String> = (0..n).filter(|i| m >> i & 1 == 1).map(|i| i.to_string()).collect();
            format!("{{{}}}", members.join(","))
        })
        .collect();
    FinLattice::from_parts(labels, |a, b| a & b == a, |a, b| a | b, |a, b| a & b).expect("powersets are lattices")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3() -> Arc<FinLattice> {
        Arc::new(chain(&["0", "m", "1"]))
    }

    fn c2() -> Arc<FinLattice> {
        Arc::new(chain(&["0", "1"]))
    }

    fn m3_raw() -> RawOrder {
        RawOrder::new(
            ["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        )
    }

    #[test]
    fn chain_is_a_frame() {
        let raw = RawOrder::new(["0", "m", "1"], &[("0", "m"), ("m", "1")]);
        let rep = validate_lattice(&raw, Level::Frame, &Caps::default()).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.closure.added_reflexive, 3);
        assert_eq!(rep.closure.added_transitive, 1);
    }

    #[test]
    fn diamond_fails_frame_level_with_witness() {
        let rep = validate_lattice(&m3_raw(), Level::Frame, &Caps::default()).unwrap();
        let scan = rep.check(CHECK_FRAME_DISTRIBUTIVITY).unwrap();
        assert_eq!(scan.status, crate::Status::Fail);
        assert_eq!(scan.witness, vec!["a", "b", "c"]);
        assert_eq!(rep.check(CHECK_BINARY_DISTRIBUTIVITY).unwrap().status, crate::Status::Fail);
        let sup = validate_lattice(&m3_raw(), Level::Suplattice, &Caps::default()).unwrap();
        assert!(sup.passed());
    }

    #[test]
    fn structural_errors_are_not_axiom_failures() {
        let dup = RawOrder::new(["a", "a"], &[]);
        assert_eq!(validate_lattice(&dup, Level::Poset, &Caps::default()).unwrap_err(), Error::DuplicateId("a".into()));
        let cyc = RawOrder::new(["a", "b"], &[("a", "b"), ("b", "a")]);
        assert!(matches!(validate_lattice(&cyc, Level::Frame, &Caps::default()), Err(Error::NotAntisymmetric(_, _))));
        let unknown = RawOrder::new(["a"], &[("a", "z")]);
        assert_eq!(Poset::close(&unknown).unwrap_err(), Error::UnknownElement("z".into()));
    }

    #[test]
    fn missing_join_is_reported() {
        let v = RawOrder::new(["0", "a", "b"], &[("0", "a"), ("0", "b")]);
        let rep = validate_lattice(&v, Level::Frame, &Caps::default()).unwrap();
        let pj = rep.check(CHECK_PAIRWISE_JOINS).unwrap();
        assert_eq!(pj.witness, vec!["a", "b"]);
        assert_eq!(rep.check(CHECK_FRAME_DISTRIBUTIVITY).unwrap().status, crate::Status::Unverified);
        assert!(FinLattice::from_raw(&v).is_err());
    }

    #[test]
    fn frame_scan_respects_cap() {
        let b4 = boolean(4);
        let c = frame_distributivity_scan(&b4, &Caps { subset_scan: 16, enumeration: 1 << 20 });
        assert_eq!(c.status, crate::Status::Unverified);
        assert!(frame_distributivity_scan(&b4, &Caps::default()).passed());
    }

    #[test]
    fn empty_join_and_meet() {
        let l = c3();
        assert_eq!(join_meet(&l, &["0", "m"], Bound::Join).unwrap(), 1);
        assert_eq!(join_meet(&l, &[], Bound::Join).unwrap(), l.bottom());
        assert_eq!(join_meet(&l, &[], Bound::Meet).unwrap(), l.top());
        assert!(join_meet(&l, &["q"], Bound::Join).is_err());
    }

    #[test]
    fn right_adjoint_of_chain_collapse() {
        let f = LatticeMap::from_labels(c3(), c2(), &[("0", "0"), ("m", "1"), ("1", "1")]).unwrap();
        let g = adjoint(&f, Side::RightOfJoinPreserving, &Caps::default()).unwrap();
        assert_eq!(g.table, vec![0, 2]);
        assert!(verify_adjunction(&f, &g).unwrap().passed());
        let props = map_props(&f, &Caps::default());
        assert!(props.monotone.passed());
        assert!(props.join_preserving.passed());
        assert!(props.finite_meet_preserving.passed());
        assert!(props.all_meet_preserving.passed());
    }

    #[test]
    fn constant_top_is_not_join_preserving() {
        let l = c3();
        let f = LatticeMap::new(l.clone(), l.clone(), vec![2, 2, 2]).unwrap();
        let props = map_props(&f, &Caps::default());
        assert!(props.monotone.passed());
        assert!(props.join_preserving.failed());
        assert!(props.join_preserving.witness.is_empty());
        assert_eq!(
            adjoint(&f, Side::RightOfJoinPreserving, &Caps::default()).unwrap_err(),
            Error::NotJoinPreserving(vec![])
        );
        let left = adjoint(&f, Side::LeftOfMeetPreserving, &Caps::default()).unwrap();
        assert!(verify_adjunction(&left, &f).unwrap().passed());
    }

    #[test]
    fn swap_against_identity_fails_with_witness() {
        let l = c2();
        let swap = LatticeMap::new(l.clone(), l.clone(), vec![1, 0]).unwrap();
        let id = LatticeMap::identity(l);
        let c = verify_adjunction(&swap, &id).unwrap();
        assert_eq!(c.witness, vec!["1", "0"]);
    }

    #[test]
    fn identity_is_self_adjoint() {
        let l = Arc::new(boolean(3));
        let id = LatticeMap::identity(l);
        let g = adjoint(&id, Side::RightOfJoinPreserving, &Caps::default()).unwrap();
        assert_eq!(g, id);
        assert!(verify_adjunction(&id, &id).unwrap().passed());
    }

    #[test]
    fn mismatched_adjunction_is_an_error() {
        let f = LatticeMap::identity(c3());
        let g = LatticeMap::identity(c2());
        assert!(matches!(verify_adjunction(&f, &g), Err(Error::Mismatch(_))));
    }

    #[test]
    fn covers_of_diamond() {
        let l = FinLattice::from_raw(&m3_raw()).unwrap();
        assert_eq!(l.covers(0), vec![1, 2, 3]);
        assert_eq!(l.covers(1), vec![4]);
        assert!(l.covers(4).is_empty());
    }
}
