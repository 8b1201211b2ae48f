//! Topologies on `Sub A`: lower Vietoris, open support and the Fell analog,
//! the sets `𝒰_{V₁,V₂}`, and the closed-subspace lattice `Max A`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::bits::{subsets_by_size, PointSet};
use crate::frame::prime_check;
use crate::linfq::{FqSpace, SubLattice};
use crate::order::{verify_adjunction, FinLattice, LatticeMap};
use crate::space::{open_locale, FinSpace};
use crate::{Caps, Check, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Vietoris,
    OpenSupport,
    Fell,
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kind> {
        match s {
            "vietoris" => Ok(Kind::Vietoris),
            "open-support" | "open_support" => Ok(Kind::OpenSupport),
            "fell" => Ok(Kind::Fell),
            _ => Err(Error::InvalidInput(vec![format!(
                "unknown topology `{s}` (expected vietoris, open-support or fell)"
            )])),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Vietoris => "vietoris",
            Kind::OpenSupport => "open-support",
            Kind::Fell => "fell",
        })
    }
}

/// A topology on the points of `Sub A`, labelled by canonical subspace keys.
#[derive(Debug, Clone)]
pub struct SpectrumTopology {
    pub sub: Arc<SubLattice>,
    pub kind: Kind,
    pub space: Arc<FinSpace>,
}

/// `Ũ = {P : P ∩ U ≠ ∅}`.
pub fn tilde(sub: &SubLattice, u: &PointSet) -> PointSet {
    PointSet::from_iter(sub.len(), (0..sub.len()).filter(|&p| sub.members[p].intersects(u)))
}

/// `ǎ = {P : a ∉ P}`.
pub fn check_set(sub: &SubLattice, a: usize) -> PointSet {
    PointSet::from_iter(sub.len(), (0..sub.len()).filter(|&p| !sub.members[p].contains(a)))
}

/// `Ǩ = {P : P ∩ K = ∅}`.
pub fn disjoint_set(sub: &SubLattice, k: &PointSet) -> PointSet {
    PointSet::from_iter(sub.len(), (0..sub.len()).filter(|&p| !sub.members[p].intersects(k)))
}

fn check_carrier(fq: &FqSpace, sub: &SubLattice) -> Result<()> {
    if fq.q != sub.q || fq.dim != sub.n {
        return Err(Error::Mismatch(format!("carrier F_{}^{} against Sub of F_{}^{}", fq.q, fq.dim, sub.q, sub.n)));
    }
    Ok(())
}

pub fn subbasis(fq: &FqSpace, sub: &SubLattice, kind: Kind, caps: &Caps) -> Result<Vec<PointSet>> {
    check_carrier(fq, sub)?;
    let mut family: Vec<PointSet> = fq.carrier.opens(caps)?.iter().map(|u| tilde(sub, u)).collect();
    match kind {
        Kind::Vietoris => {}
        Kind::OpenSupport => family.extend((0..fq.vector_count()).map(|a| check_set(sub, a))),
        Kind::Fell => {
            let n = fq.vector_count();
            if n >= 64 || (1u128 << n) > caps.subset_scan as u128 {
                return Err(Error::CapExceeded {
                    what: "compact subsets".into(),
                    needed: 1u128.checked_shl(n as u32).unwrap_or(u128::MAX),
                    cap: caps.subset_scan,
                });
            }
            family.extend(subsets_by_size(n).map(|k| disjoint_set(sub, &PointSet::from_iter(n, k))));
        }
    }
    family.sort();
    family.dedup();
    Ok(family)
}

pub fn spectrum_topology(fq: &FqSpace, sub: Arc<SubLattice>, kind: Kind, caps: &Caps) -> Result<SpectrumTopology> {
    let family = subbasis(fq, &sub, kind, caps)?;
    let labels = (0..sub.len()).map(|i| sub.key(i)).collect();
    let space = Arc::new(FinSpace::generate(labels, family)?);
    Ok(SpectrumTopology { sub, kind, space })
}

/// The up-set topology of inclusion on `Sub A`.
pub fn alexandrov(sub: &SubLattice) -> FinSpace {
    let labels = (0..sub.len()).map(|i| sub.key(i)).collect();
    let nbhd = (0..sub.len()).map(|p| sub.lattice.up(p).clone()).collect();
    FinSpace::from_nbhds(labels, nbhd).expect("up-sets of a partial order")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "relation", rename_all = "snake_case")]
pub enum Comparison {
    Equal,
    FirstStrictlyCoarser { witness: Vec<String> },
    SecondStrictlyCoarser { witness: Vec<String> },
    Incomparable { first_only: Vec<String>, second_only: Vec<String> },
}

/// An open of `a` that is not open in `b`, if any.
pub fn finer_witness(a: &FinSpace, b: &FinSpace) -> Option<PointSet> {
    a.nbhds().iter().find(|u| !b.is_open(u)).cloned()
}

pub fn topology_compare(t1: &FinSpace, t2: &FinSpace) -> Result<Comparison> {
    if t1.labels() != t2.labels() {
        return Err(Error::Mismatch("topologies on different point sets".into()));
    }
    let only1 = finer_witness(t1, t2).map(|u| u.labels(t1.labels()));
    let only2 = finer_witness(t2, t1).map(|u| u.labels(t2.labels()));
    Ok(match (only1, only2) {
        (None, None) => Comparison::Equal,
        (None, Some(w)) => Comparison::FirstStrictlyCoarser { witness: w },
        (Some(w), None) => Comparison::SecondStrictlyCoarser { witness: w },
        (Some(a), Some(b)) => Comparison::Incomparable { first_only: a, second_only: b },
    })
}

/// `vietoris ⊆ open_support ⊆ fell` as families of opens.
pub fn refinement_chain(fq: &FqSpace, sub: Arc<SubLattice>, caps: &Caps) -> Result<Check> {
    let v = spectrum_topology(fq, sub.clone(), Kind::Vietoris, caps)?;
    let o = spectrum_topology(fq, sub.clone(), Kind::OpenSupport, caps)?;
    let f = spectrum_topology(fq, sub, Kind::Fell, caps)?;
    for (a, b) in [(&v, &o), (&o, &f)] {
        if let Some(u) = finer_witness(&a.space, &b.space) {
            return Ok(Check::fail("vietoris ⊆ open-support ⊆ fell", u.labels(a.space.labels()))
                .with_note(format!("open in {} but not in {}", a.kind, b.kind)));
        }
    }
    Ok(Check::pass("vietoris ⊆ open-support ⊆ fell"))
}

/// Prime test for an open set of a finite space using minimal neighbourhoods:
/// `U ≠ X` is prime iff `N(x) ∩ N(y) ⊄ U` for all `x, y ∉ U`. Any split pair
/// of opens contains such a pair of neighbourhoods, so this is exact.
pub fn prime_open_check(x: &FinSpace, u: &PointSet) -> Check {
    if u.is_full() {
        return Check::fail("prime", vec![u.braced(x.labels())]).with_note("the whole space is not prime");
    }
    let outside: Vec<usize> = u.complement().iter().collect();
    for (i, &a) in outside.iter().enumerate() {
        for &b in &outside[i..] {
            if x.nbhd(a).intersection(x.nbhd(b)).is_subset(u) {
                return Check::fail("prime", vec![x.nbhd(a).braced(x.labels()), x.nbhd(b).braced(x.labels())]);
            }
        }
    }
    Check::pass("prime")
}

#[derive(Debug, Clone, Serialize)]
pub struct UInterval {
    pub set: Vec<String>,
    pub open: bool,
    /// Present when the set is open.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<Check>,
}

/// `𝒰_{V₁,V₂}`: the points of `t` outside the interval `[V₁, V₂]`.
pub fn u_interval(t: &SpectrumTopology, v1: usize, v2: usize, caps: &Caps) -> Result<UInterval> {
    let sub = &t.sub;
    if !sub.lattice.leq(v1, v2) {
        return Err(Error::NotAnInterval(sub.key(v1), sub.key(v2)));
    }
    let set =
        PointSet::from_iter(sub.len(), (0..sub.len()).filter(|&p| !(sub.lattice.leq(v1, p) && sub.lattice.leq(p, v2))));
    let open = t.space.is_open(&set);
    let prime = open.then(|| match open_locale(t.space.clone(), caps) {
        Ok(ol) => prime_check(ol.lattice(), ol.element(&set).expect("open set")),
        Err(_) => prime_open_check(&t.space, &set).with_note("open lattice over cap; neighbourhood criterion"),
    });
    Ok(UInterval { set: set.labels(t.space.labels()), open, prime })
}

/// `Max A`: subspaces closed in the carrier, with the closure retraction.
#[derive(Debug, Clone)]
pub struct MaxSubspaces {
    pub sub: Arc<SubLattice>,
    /// Indices into `sub` of the closed subspaces, in canonical order.
    pub closed: Vec<usize>,
    pub lattice: Arc<FinLattice>,
    /// `cl : Sub A → Max A`.
    pub closure: LatticeMap,
    /// `Max A → Sub A`.
    pub inclusion: LatticeMap,
    pub adjunction: Check,
}

impl MaxSubspaces {
    /// Closure as an index into `sub`.
    pub fn closure_of(&self, v: usize) -> usize {
        self.closed[self.closure.apply(v)]
    }

    pub fn is_closed(&self, v: usize) -> bool {
        self.closure_of(v) == v
    }
}

pub fn max_subspaces(fq: &FqSpace, sub: Arc<SubLattice>) -> Result<MaxSubspaces> {
    check_carrier(fq, &sub)?;
    let closure_in_sub = (0..sub.len())
        .map(|v| {
            let cl = fq.carrier.closure(&sub.members[v]);
            sub.index_of_members(&cl).ok_or_else(|| {
                Error::UnsupportedCarrier(format!("closure of subspace {} is not a subspace", sub.key(v)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let closed: Vec<usize> = (0..sub.len()).filter(|&v| closure_in_sub[v] == v).collect();
    let pos = |v: usize| closed.iter().position(|&c| c == v).expect("closed subspace");
    let lattice = Arc::new(FinLattice::from_parts(
        closed.iter().map(|&v| sub.key(v)).collect(),
        |a, b| sub.lattice.leq(closed[a], closed[b]),
        |a, b| pos(closure_in_sub[sub.lattice.join(closed[a], closed[b])]),
        |a, b| pos(closure_in_sub[sub.lattice.meet(closed[a], closed[b])]),
    )?);
    let closure =
        LatticeMap::new(sub.lattice.clone(), lattice.clone(), closure_in_sub.iter().map(|&c| pos(c)).collect())?;
    let inclusion = LatticeMap::new(lattice.clone(), sub.lattice.clone(), closed.clone())?;
    let adjunction = verify_adjunction(&closure, &inclusion)?;
    Ok(MaxSubspaces { sub, closed, lattice, closure, inclusion, adjunction })
}

/// The carrier of a bundle: `A` with its topology, `Sub A` and the two
/// topologies on it that the bundle constructions use.
#[derive(Debug, Clone)]
pub struct Carrier {
    pub fq: FqSpace,
    pub sub: Arc<SubLattice>,
    pub vietoris: SpectrumTopology,
    pub open_support: SpectrumTopology,
}

impl Carrier {
    pub fn new(fq: FqSpace, caps: &Caps) -> Result<Carrier> {
        let sub = Arc::new(SubLattice::new(fq.q, fq.dim, caps)?);
        let vietoris = spectrum_topology(&fq, sub.clone(), Kind::Vietoris, caps)?;
        let open_support = spectrum_topology(&fq, sub.clone(), Kind::OpenSupport, caps)?;
        Ok(Carrier { fq, sub, vietoris, open_support })
    }

    pub fn discrete(q: u32, dim: usize, caps: &Caps) -> Result<Carrier> {
        Carrier::new(FqSpace::discrete(q, dim)?, caps)
    }

    pub fn vector_count(&self) -> usize {
        self.fq.vector_count()
    }
}
