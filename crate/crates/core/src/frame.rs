//! Locales, prime elements and spectra.

use std::sync::Arc;

use serde::Serialize;

use crate::bits::PointSet;
use crate::order::{
    binary_distributivity, check_finite_meet_preserving, check_join_preserving, right_adjoint_unchecked, FinLattice,
    LatticeMap,
};
use crate::space::{open_locale, CtsMap, FinSpace, OpenLocale};
use crate::{Caps, Check, Error, Result};

/// A finite frame. Finite distributive lattices are exactly the finite frames,
/// so binary distributivity is the admission test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Locale {
    lattice: Arc<FinLattice>,
}

impl Locale {
    pub fn new(lattice: Arc<FinLattice>) -> Result<Locale> {
        let c = binary_distributivity(&lattice);
        if c.failed() {
            return Err(Error::NotAFrame(format!("distributivity fails at {:?}", c.witness)));
        }
        Ok(Locale { lattice })
    }

    /// For lattices distributive by construction (lattices of open sets).
    pub(crate) fn from_distributive(lattice: Arc<FinLattice>) -> Locale {
        Locale { lattice }
    }

    pub fn lattice(&self) -> &Arc<FinLattice> {
        &self.lattice
    }

    pub fn is_trivial(&self) -> bool {
        self.lattice.bottom() == self.lattice.top()
    }
}

/// A locale map `L → M`, presented by its inverse image `f* : M → L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocaleMap {
    pub inverse_image: LatticeMap,
    pub direct_image: LatticeMap,
}

impl LocaleMap {
    pub fn new(inverse_image: LatticeMap, caps: &Caps) -> Result<LocaleMap> {
        let joins = check_join_preserving(&inverse_image, caps);
        if joins.failed() {
            return Err(Error::NotLocaleHomomorphism(format!("joins not preserved at {:?}", joins.witness)));
        }
        let meets = check_finite_meet_preserving(&inverse_image);
        if meets.failed() {
            return Err(Error::NotLocaleHomomorphism(format!("finite meets not preserved at {:?}", meets.witness)));
        }
        let direct_image = right_adjoint_unchecked(&inverse_image);
        Ok(LocaleMap { inverse_image, direct_image })
    }

    pub fn identity(l: &Locale) -> LocaleMap {
        let id = LatticeMap::identity(l.lattice.clone());
        LocaleMap { inverse_image: id.clone(), direct_image: id }
    }

    /// Inverse-image codomain, i.e. the domain of the locale map.
    pub fn domain(&self) -> &Arc<FinLattice> {
        &self.inverse_image.target
    }

    pub fn codomain(&self) -> &Arc<FinLattice> {
        &self.inverse_image.source
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeFailure {
    /// `p = 1`.
    Top,
    /// `a ∧ b <= p` with neither `a <= p` nor `b <= p`.
    Split(usize, usize),
}

/// Prime test. Pairs are scanned from the top element down so a failing
/// test reports the largest witness pair.
pub fn is_prime(l: &FinLattice, p: usize) -> Result<(), PrimeFailure> {
    if p == l.top() {
        return Err(PrimeFailure::Top);
    }
    let below = l.down(p);
    let outside: Vec<usize> = l.elements().rev().filter(|&a| !below.contains(a)).collect();
    for (i, &a) in outside.iter().enumerate() {
        for &b in &outside[i + 1..] {
            if below.contains(l.meet(a, b)) {
                return Err(PrimeFailure::Split(a, b));
            }
        }
    }
    Ok(())
}

pub fn prime_check(l: &FinLattice, p: usize) -> Check {
    match is_prime(l, p) {
        Ok(()) => Check::pass("prime"),
        Err(PrimeFailure::Top) => Check::fail("prime", vec![l.label(p).to_string()]).with_note("p is the top element"),
        Err(PrimeFailure::Split(a, b)) => Check::fail("prime", l.names(&[a, b]))
            .with_note(format!("meet is below {} but neither element is", l.label(p))),
    }
}

/// Prime elements in canonical element order.
pub fn primes(l: &FinLattice) -> Vec<usize> {
    l.elements().filter(|&p| is_prime(l, p).is_ok()).collect()
}

/// The spectrum of a locale: its primes, topologized by `U_a = {p : a ≰ p}`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub lattice: Arc<FinLattice>,
    pub primes: Vec<usize>,
    /// Point index of each element that is prime.
    point: Vec<Option<usize>>,
    pub space: Arc<FinSpace>,
}

impl Spectrum {
    pub fn point_of_element(&self, a: usize) -> Option<usize> {
        self.point[a]
    }

    pub fn prime_of_point(&self, x: usize) -> usize {
        self.primes[x]
    }

    /// `U_a` as a point set of the spectrum space.
    pub fn u(&self, a: usize) -> PointSet {
        PointSet::from_iter(
            self.primes.len(),
            self.primes.iter().enumerate().filter(|&(_, &p)| !self.lattice.leq(a, p)).map(|(i, _)| i),
        )
    }
}

pub fn spectrum_space(l: &Locale) -> Result<Spectrum> {
    let lattice = l.lattice.clone();
    let primes = primes(&lattice);
    let mut point = vec![None; lattice.len()];
    for (i, &p) in primes.iter().enumerate() {
        point[p] = Some(i);
    }
    let labels = primes.iter().map(|&p| lattice.label(p).to_string()).collect();
    let mut spec = Spectrum { lattice, primes, point, space: Arc::new(FinSpace::indiscrete(Vec::new())) };
    let us: Vec<PointSet> = spec.lattice.elements().map(|a| spec.u(a)).collect();
    let laws = spectrum_laws(&spec.lattice, &us);
    if laws.failed() {
        return Err(Error::Invariant(format!("spectrum law fails: {:?}", laws.witness)));
    }
    let mut family = us;
    family.sort();
    family.dedup();
    spec.space = Arc::new(FinSpace::from_opens(labels, family)?);
    Ok(spec)
}

/// `U_1 = Σ`, `U_0 = ∅`, `U_{a∧b} = U_a ∩ U_b` and `U_{a∨b} = U_a ∪ U_b`; for a
/// finite lattice the last two with the empty cases give all finite and
/// arbitrary meets and joins.
pub fn spectrum_laws(l: &FinLattice, us: &[PointSet]) -> Check {
    if !us[l.top()].is_full() {
        return Check::fail("spectrum laws", vec!["U_1".into()]);
    }
    if !us[l.bottom()].is_empty() {
        return Check::fail("spectrum laws", vec!["U_0".into()]);
    }
    for a in l.elements() {
        for b in a + 1..l.len() {
            if us[l.meet(a, b)] != us[a].intersection(&us[b]) {
                return Check::fail("spectrum laws", vec!["meet".into(), l.label(a).into(), l.label(b).into()]);
            }
            if us[l.join(a, b)] != us[a].union(&us[b]) {
                return Check::fail("spectrum laws", vec!["join".into(), l.label(a).into(), l.label(b).into()]);
            }
        }
    }
    Check::pass("spectrum laws")
}

/// The map `a ↦ U_a` from a locale into the opens of its spectrum.
#[derive(Debug, Clone)]
pub struct Spatialization {
    pub spectrum: Spectrum,
    pub opens: OpenLocale,
    /// `a ↦ U_a` as a frame homomorphism `L → 𝒪(Σ L)`.
    pub map: LatticeMap,
    pub is_spatial: bool,
}

pub fn spatialization(l: &Locale, caps: &Caps) -> Result<Spatialization> {
    let spectrum = spectrum_space(l)?;
    let opens = open_locale(spectrum.space.clone(), caps)?;
    let table = l.lattice.elements().map(|a| opens.element(&spectrum.u(a))).collect::<Result<Vec<_>>>()?;
    let map = LatticeMap::new(l.lattice.clone(), opens.lattice().clone(), table)?;
    let hom = LocaleMap::new(map.clone(), caps);
    if let Err(e) = hom {
        return Err(Error::Invariant(format!("a ↦ U_a is not a frame homomorphism: {e}")));
    }
    let is_spatial = map.is_bijective();
    Ok(Spatialization { spectrum, opens, map, is_spatial })
}

/// `Σ(f)(p) = ⋁{a : f*(a) <= p}` for a locale map with `f* : M → L`, as a
/// continuous map `Σ(L) → Σ(M)`.
pub fn spectrum_map(f: &LocaleMap, source: &Spectrum, target: &Spectrum) -> Result<CtsMap> {
    if *source.lattice != **f.domain() || *target.lattice != **f.codomain() {
        return Err(Error::Mismatch("spectra do not match the locale map".into()));
    }
    let table = source
        .primes
        .iter()
        .map(|&p| {
            let q = f.direct_image.apply(p);
            target.point_of_element(q).ok_or_else(|| {
                Error::Invariant(format!("direct image of prime {} is not prime", source.lattice.label(p)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let map = CtsMap::new(source.space.clone(), target.space.clone(), table)?;
    let c = map.check_continuous();
    if c.failed() {
        return Err(Error::Invariant(format!("spectrum map not continuous at {:?}", c.witness)));
    }
    Ok(map)
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumSummary {
    pub primes: Vec<String>,
    pub opens: Vec<Vec<String>>,
}

pub fn spectrum_summary(s: &Spectrum, caps: &Caps) -> Result<SpectrumSummary> {
    Ok(SpectrumSummary {
        primes: s.lattice.names(&s.primes),
        opens: s.space.opens(caps)?.iter().map(|u| u.labels(s.space.labels())).collect(),
    })
}

/// All frame homomorphisms `L → M` (preserving finite meets and all joins),
/// in lexicographic table order. Backtracking checks each join and meet as
/// soon as all four elements involved are assigned; the cap bounds the
/// search nodes.
pub fn frame_homomorphisms(l: &Arc<FinLattice>, m: &Arc<FinLattice>, caps: &Caps) -> Result<Vec<LatticeMap>> {
    fn go(
        l: &FinLattice,
        m: &FinLattice,
        table: &mut Vec<Option<usize>>,
        i: usize,
        out: &mut Vec<Vec<usize>>,
        nodes: &mut u64,
        caps: &Caps,
    ) -> Result<()> {
        if i == l.len() {
            out.push(table.iter().map(|v| v.expect("assigned")).collect());
            return Ok(());
        }
        let forced = if i == l.bottom() {
            Some(m.bottom())
        } else if i == l.top() {
            Some(m.top())
        } else {
            None
        };
        for v in m.elements() {
            if forced.is_some_and(|f| f != v) {
                continue;
            }
            *nodes += 1;
            caps.check("frame homomorphism search nodes", *nodes as u128)?;
            table[i] = Some(v);
            let ok = (0..=i).all(|a| {
                (a..=i).all(|b| {
                    let (j, k) = (l.join(a, b), l.meet(a, b));
                    if ![a, b, j, k].contains(&i) || j > i || k > i {
                        return true;
                    }
                    let (fa, fb) = (table[a].expect("assigned"), table[b].expect("assigned"));
                    table[j] == Some(m.join(fa, fb)) && table[k] == Some(m.meet(fa, fb))
                })
            });
            if ok {
                go(l, m, table, i + 1, out, nodes, caps)?;
            }
            table[i] = None;
        }
        Ok(())
    }
    let mut out = Vec::new();
    if l.is_empty() {
        return Ok(Vec::new());
    }
    go(l, m, &mut vec![None; l.len()], 0, &mut out, &mut 0, caps)?;
    out.into_iter().map(|t| LatticeMap::new(l.clone(), m.clone(), t)).collect()
}
