//! Quotient vector bundles over finite spaces.
//!
//! A bundle is given by its kernel map `κ : X → Sub A`. The total space `E` is
//! materialized with one point `(x, r)` per canonical coset representative `r`
//! of `A / κ(x)` and carries the quotient topology of `A × X`; openness of the
//! quotient map is checked, not assumed.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::bits::PointSet;
use crate::hyper::{max_subspaces, Carrier};
use crate::linfq::{format_vector, FqLinearMap, FqSubspace};
use crate::order::{verify_adjunction, LatticeMap};
use crate::space::{product, quotient, soberify, CtsMap, FinSpace, Soberification};
use crate::{Caps, Check, Error, Result};

/// A base space together with its soberification data (opens, spectrum, sob).
#[derive(Debug, Clone)]
pub struct Base {
    pub space: Arc<FinSpace>,
    pub sob: Soberification,
}

impl Base {
    pub fn new(space: Arc<FinSpace>, caps: &Caps) -> Result<Arc<Base>> {
        let sob = soberify(space.clone(), caps)?;
        Ok(Arc::new(Base { space, sob }))
    }

    pub fn is_sober(&self) -> bool {
        self.sob.is_bijective()
    }

    /// Element of `𝒪(X)` for an open set.
    pub fn open_element(&self, u: &PointSet) -> usize {
        self.sob.open_locale.element(u).expect("open set of the base")
    }

    pub fn open(&self, element: usize) -> &PointSet {
        self.sob.open_locale.open(element)
    }

    pub fn prime_count(&self) -> usize {
        self.sob.spectrum.primes.len()
    }

    /// The prime open at a spectrum point.
    pub fn prime_open(&self, point: usize) -> &PointSet {
        self.open(self.sob.spectrum.prime_of_point(point))
    }
}

/// A kernel map with the support data derived from it. No total space.
#[derive(Debug, Clone)]
pub struct KernelMap {
    pub base: Arc<Base>,
    pub carrier: Arc<Carrier>,
    pub kappa: Vec<usize>,
    /// `{x : â(x) ≠ 0}` for each vector `a`.
    nonzero: Vec<PointSet>,
    /// Interior of `nonzero[a]`.
    osupp: Vec<PointSet>,
}

impl KernelMap {
    pub fn new(base: Arc<Base>, carrier: Arc<Carrier>, kappa: Vec<usize>) -> Result<KernelMap> {
        if kappa.len() != base.space.len() {
            return Err(Error::Mismatch(format!("{} kernel values for {} points", kappa.len(), base.space.len())));
        }
        if let Some(&bad) = kappa.iter().find(|&&v| v >= carrier.sub.len()) {
            return Err(Error::OutOfRange(bad));
        }
        let x = &base.space;
        let nonzero: Vec<PointSet> = (0..carrier.vector_count())
            .map(|a| PointSet::from_iter(x.len(), x.points().filter(|&p| !carrier.sub.members[kappa[p]].contains(a))))
            .collect();
        let osupp = nonzero.iter().map(|z| x.interior(z)).collect();
        Ok(KernelMap { base, carrier, kappa, nonzero, osupp })
    }

    pub fn space(&self) -> &Arc<FinSpace> {
        &self.base.space
    }

    pub fn kappa_key(&self, x: usize) -> String {
        self.carrier.sub.key(self.kappa[x])
    }

    pub fn kappa_subspace(&self, x: usize) -> &FqSubspace {
        &self.carrier.sub.subspaces[self.kappa[x]]
    }

    pub fn vector_label(&self, a: usize) -> &str {
        self.carrier.fq.label(a)
    }

    /// `κ` as a point map into `Sub A` with the given topology.
    fn kappa_into(&self, target: &Arc<FinSpace>) -> CtsMap {
        CtsMap::new(self.base.space.clone(), target.clone(), self.kappa.clone()).expect("kernel indices in range")
    }

    /// Continuity into the lower Vietoris topology; the witness is the
    /// Vietoris neighbourhood of `κ(x)` whose preimage misses part of `N(x)`.
    pub fn vietoris_continuity(&self) -> Result<()> {
        let f = self.kappa_into(&self.carrier.vietoris.space);
        for x in self.base.space.points() {
            let target = self.carrier.vietoris.space.nbhd(self.kappa[x]);
            if self.base.space.nbhd(x).iter().any(|y| !target.contains(self.kappa[y])) {
                return Err(Error::KernelNotContinuous {
                    point: self.base.space.label(x).to_string(),
                    open: target.labels(f.target.labels()),
                });
            }
        }
        Ok(())
    }

    pub fn is_continuous(&self) -> bool {
        self.vietoris_continuity().is_ok()
    }

    pub fn nonzero_set(&self, a: usize) -> &PointSet {
        &self.nonzero[a]
    }

    /// `int {x : â(x) ≠ 0}`.
    pub fn open_support(&self, a: usize) -> &PointSet {
        &self.osupp[a]
    }

    /// `σ(V) = ⋃_{a ∈ V} osupp â`.
    pub fn sigma(&self, v: usize) -> PointSet {
        let mut out = self.base.space.empty_set();
        for a in self.carrier.sub.members[v].iter() {
            out.union_with(&self.osupp[a]);
        }
        out
    }

    /// `{a : osupp â ⊆ U}`.
    pub fn gamma_set(&self, u: &PointSet) -> PointSet {
        PointSet::from_iter(
            self.carrier.vector_count(),
            (0..self.carrier.vector_count()).filter(|&a| self.osupp[a].is_subset(u)),
        )
    }

    /// `γ(U) = span{a : osupp â ⊆ U}`.
    pub fn gamma(&self, u: &PointSet) -> usize {
        self.carrier.sub.span_of(&self.gamma_set(u))
    }

    pub fn sigma_map(&self) -> Result<LatticeMap> {
        let table = (0..self.carrier.sub.len()).map(|v| self.base.open_element(&self.sigma(v))).collect();
        LatticeMap::new(self.carrier.sub.lattice.clone(), self.base.sob.open_locale.lattice().clone(), table)
    }

    pub fn gamma_map(&self) -> Result<LatticeMap> {
        let ol = &self.base.sob.open_locale;
        let table = ol.opens.iter().map(|u| self.gamma(u)).collect();
        LatticeMap::new(ol.lattice().clone(), self.carrier.sub.lattice.clone(), table)
    }

    pub fn verify_sigma_gamma(&self) -> Result<SigmaGammaReport> {
        let adjunction = verify_adjunction(&self.sigma_map()?, &self.gamma_map()?)?;
        let ol = &self.base.sob.open_locale;
        let bad: Vec<String> = ol
            .opens
            .iter()
            .filter(|u| self.carrier.sub.index_of_members(&self.gamma_set(u)).is_none())
            .map(|u| u.braced(self.base.space.labels()))
            .collect();
        let gamma_sets_are_subspaces = if bad.is_empty() {
            Check::pass("restriction sets are subspaces")
        } else {
            Check::fail("restriction sets are subspaces", bad)
        };
        Ok(SigmaGammaReport { adjunction, gamma_sets_are_subspaces })
    }

    /// `𝔨(P) = γ(P)` at each point of `Σ𝒪(X)`.
    pub fn spectral_kernel(&self) -> Vec<usize> {
        (0..self.base.prime_count()).map(|p| self.gamma(self.base.prime_open(p))).collect()
    }

    pub fn spectral_kernel_map(&self) -> CtsMap {
        CtsMap::new(self.base.sob.spectrum.space.clone(), self.carrier.vietoris.space.clone(), self.spectral_kernel())
            .expect("kernel indices in range")
    }

    /// `κ(x) ⊆ 𝔨(sob x)` for every point.
    pub fn kernel_below_spectral(&self) -> Result<()> {
        let k = self.spectral_kernel();
        for x in self.base.space.points() {
            let kx = k[self.base.sob.map.apply(x)];
            if !self.carrier.sub.lattice.leq(self.kappa[x], kx) {
                return Err(Error::Invariant(format!(
                    "κ({}) = {} is not contained in the spectral kernel {}",
                    self.base.space.label(x),
                    self.kappa_key(x),
                    self.carrier.sub.key(kx)
                )));
            }
        }
        Ok(())
    }

    /// First vector whose nonvanishing set is not open.
    pub fn open_support_witness(&self) -> Option<usize> {
        (0..self.carrier.vector_count()).find(|&a| !self.base.space.is_open(&self.nonzero[a]))
    }

    pub fn open_support_by_factorization(&self) -> bool {
        let k = self.spectral_kernel();
        self.base.space.points().all(|x| self.kappa[x] == k[self.base.sob.map.apply(x)])
    }

    pub fn open_support_by_topology(&self) -> bool {
        self.kappa_into(&self.carrier.open_support.space).check_continuous().passed()
    }

    /// The three open-support criteria, which must agree.
    pub fn open_support_criteria(&self) -> Result<OpenSupportCriteria> {
        let witness = self.open_support_witness();
        let c = OpenSupportCriteria {
            pointwise: witness.is_none(),
            factorization: self.open_support_by_factorization(),
            open_support_topology: self.open_support_by_topology(),
            witness: witness.map(|a| self.vector_label(a).to_string()),
        };
        if c.pointwise != c.factorization || c.pointwise != c.open_support_topology {
            return Err(Error::CriterionDisagreement(format!(
                "open support: pointwise={}, factorization={}, open-support topology={}",
                c.pointwise, c.factorization, c.open_support_topology
            )));
        }
        Ok(c)
    }

    pub fn spectral_kernel_continuous(&self) -> Check {
        let mut c = self.spectral_kernel_map().check_continuous();
        c.name = "spectral kernel continuous".into();
        c
    }

    fn passes(&self, filter: Filter) -> Result<bool> {
        if !self.is_continuous() {
            return Ok(false);
        }
        if filter == Filter::Continuous {
            return Ok(true);
        }
        if !self.open_support_criteria()?.pointwise {
            return Ok(false);
        }
        Ok(match filter {
            Filter::Continuous | Filter::OpenSupport => true,
            Filter::Spectral => self.spectral_kernel_continuous().passed(),
            Filter::Sober => self.spectral_kernel_continuous().passed() && self.base.is_sober(),
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SigmaGammaReport {
    pub adjunction: Check,
    pub gamma_sets_are_subspaces: Check,
}

#[derive(Debug, Clone, Serialize)]
pub struct OpenSupportCriteria {
    pub pointwise: bool,
    pub factorization: bool,
    pub open_support_topology: bool,
    /// First vector whose nonvanishing set is not open.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// A quotient vector bundle with its materialized total space.
#[derive(Debug, Clone)]
pub struct QVBundle {
    pub kernel: KernelMap,
    pub total: Arc<FinSpace>,
    /// `(x, representative vector)` for each point of `E`.
    pub points: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    /// `q(a, x)` at product index `a·|X| + x`.
    pub q_table: Vec<usize>,
    pub projection: CtsMap,
    pub linear_ops: Vec<Check>,
}

impl QVBundle {
    pub fn build(base: Arc<Base>, carrier: Arc<Carrier>, kappa: Vec<usize>) -> Result<QVBundle> {
        let kernel = KernelMap::new(base, carrier, kappa)?;
        kernel.vietoris_continuity()?;
        let x = kernel.base.space.clone();
        let fq = &kernel.carrier.fq;
        let mut points = Vec::new();
        let mut labels = Vec::new();
        for p in x.points() {
            for rep in kernel.kappa_subspace(p).coset_reps() {
                labels.push(format!("{}|{}", x.label(p), format_vector(&rep)));
                points.push((p, fq.index(&rep)));
            }
        }
        let index: HashMap<(usize, usize), usize> = points.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let m = x.len();
        let mut q_table = vec![0; fq.vector_count() * m];
        for a in 0..fq.vector_count() {
            let v = fq.vector(a);
            for p in x.points() {
                let rep = fq.index(&kernel.kappa_subspace(p).reduce(&v));
                q_table[a * m + p] = index[&(p, rep)];
            }
        }
        let prod = Arc::new(product(&fq.carrier, &x));
        let total = Arc::new(quotient(&prod, &q_table, labels)?);
        let q = CtsMap::new(prod, total.clone(), q_table.clone())?;
        let open = q.check_open();
        if open.failed() {
            return Err(Error::QuotientNotOpen(open.witness));
        }
        let projection = CtsMap::new(total.clone(), x.clone(), points.iter().map(|&(p, _)| p).collect())?;
        if projection.check_continuous().failed() || projection.check_open().failed() {
            return Err(Error::Invariant("bundle projection is not continuous and open".into()));
        }
        let mut bundle = QVBundle { kernel, total, points, index, q_table, projection, linear_ops: Vec::new() };
        bundle.linear_ops = bundle.linear_ops_report();
        for a in 0..bundle.kernel.carrier.vector_count() {
            if bundle.section(a).check_continuous().failed() {
                return Err(Error::Invariant(format!(
                    "section of {} is not continuous",
                    bundle.kernel.vector_label(a)
                )));
            }
        }
        Ok(bundle)
    }

    pub fn from_space(space: Arc<FinSpace>, carrier: Arc<Carrier>, kappa: Vec<usize>, caps: &Caps) -> Result<QVBundle> {
        QVBundle::build(Base::new(space, caps)?, carrier, kappa)
    }

    /// `κ ≡ O`.
    pub fn trivial(base: Arc<Base>, carrier: Arc<Carrier>) -> Result<QVBundle> {
        let kappa = vec![carrier.sub.zero(); base.space.len()];
        QVBundle::build(base, carrier, kappa)
    }

    pub fn base(&self) -> &Arc<FinSpace> {
        &self.kernel.base.space
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.kernel.carrier
    }

    pub fn kappa(&self) -> &[usize] {
        &self.kernel.kappa
    }

    /// `q(a, x)` as a point of `E`.
    pub fn q(&self, a: usize, x: usize) -> usize {
        self.q_table[a * self.base().len() + x]
    }

    pub fn point(&self, x: usize, rep: usize) -> Option<usize> {
        self.index.get(&(x, rep)).copied()
    }

    pub fn fiber(&self, x: usize) -> Vec<usize> {
        (0..self.points.len()).filter(|&e| self.points[e].0 == x).collect()
    }

    pub fn zero_at(&self, x: usize) -> usize {
        self.q(0, x)
    }

    /// `â : X → E`.
    pub fn section(&self, a: usize) -> CtsMap {
        let table = self.base().points().map(|x| self.q(a, x)).collect();
        CtsMap::new(self.base().clone(), self.total.clone(), table).expect("section in range")
    }

    /// Same bundle data (base topology, carrier, kernel map).
    pub fn same_as(&self, other: &QVBundle) -> bool {
        self.base() == other.base()
            && self.carrier().fq.q == other.carrier().fq.q
            && *self.carrier().fq.carrier == *other.carrier().fq.carrier
            && self.kappa() == other.kappa()
    }

    fn add_points(&self, e1: usize, e2: usize) -> usize {
        let (x, r1) = self.points[e1];
        let r2 = self.points[e2].1;
        self.q(self.carrier().fq.add(r1, r2), x)
    }

    fn scale_point(&self, c: u32, e: usize) -> usize {
        let (x, r) = self.points[e];
        self.q(self.carrier().fq.scale(c, r), x)
    }

    /// Continuity of the fiberwise vector operations, reported only.
    fn linear_ops_report(&self) -> Vec<Check> {
        let x = self.base();
        let zero = CtsMap::new(x.clone(), self.total.clone(), x.points().map(|p| self.zero_at(p)).collect())
            .expect("zero section");
        let mut zero_cont = zero.check_continuous();
        zero_cont.name = "zero section continuous".into();
        let zero_set = zero.image(&x.full());
        let zero_closed = if self.total.is_closed(&zero_set) {
            Check::pass("zero section closed")
        } else {
            Check::fail("zero section closed", zero_set.labels(self.total.labels()))
        };

        let ee = product(&self.total, &self.total);
        let n = self.points.len();
        let pairs = PointSet::from_iter(
            n * n,
            (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| self.points[i].0 == self.points[j].0)
                .map(|(i, j)| i * n + j),
        );
        let fibered = Arc::new(ee.restrict(&pairs));
        let table = pairs.iter().map(|ij| self.add_points(ij / n, ij % n)).collect();
        let mut add = CtsMap::new(fibered, self.total.clone(), table).expect("addition").check_continuous();
        add.name = "addition continuous".into();

        let q = self.carrier().fq.q;
        let scalar = (0..q)
            .map(|c| {
                let table = (0..n).map(|e| self.scale_point(c, e)).collect();
                (c, CtsMap::new(self.total.clone(), self.total.clone(), table).expect("scalar action"))
            })
            .find(|(_, m)| m.check_continuous().failed())
            .map_or(Check::pass("scalar action continuous"), |(c, _)| {
                Check::fail("scalar action continuous", vec![c.to_string()])
            });
        vec![zero_cont, zero_closed, add, scalar]
    }

    pub fn linear_op(&self, name: &str) -> Option<&Check> {
        self.linear_ops.iter().find(|c| c.name == name)
    }

    pub fn section_labels(&self, a: usize) -> Vec<String> {
        self.base().points().map(|x| self.total.label(self.q(a, x)).to_string()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Filter {
    Continuous,
    OpenSupport,
    Spectral,
    Sober,
}

impl FromStr for Filter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Filter> {
        match s {
            "continuous" => Ok(Filter::Continuous),
            "open-support" | "open_support" => Ok(Filter::OpenSupport),
            "spectral" => Ok(Filter::Spectral),
            "sober" => Ok(Filter::Sober),
            _ => Err(Error::InvalidInput(vec![format!(
                "unknown filter `{s}` (expected continuous, open-support, spectral or sober)"
            )])),
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Filter::Continuous => "continuous",
            Filter::OpenSupport => "open-support",
            Filter::Spectral => "spectral",
            Filter::Sober => "sober",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub open_support: bool,
    pub criteria: OpenSupportCriteria,
    pub spectral_kernel_continuous: bool,
    pub spectral: bool,
    pub sober: bool,
    pub checks: Vec<Check>,
}

impl Classification {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| !c.failed())
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const CHECK_CLOSURE_CRITERION: &str = "closure criterion matches kernel continuity";
pub const CHECK_INTERSECTION_CRITERION: &str = "intersection criterion matches kernel continuity";
pub const CHECK_PREIMAGE_IDENTITY: &str = "kernel preimage identity";
pub const CHECK_KERNEL_BELOW: &str = "kernel below spectral kernel";
pub const CHECK_ZERO_SECTION: &str = "closed zero section implies open support";
pub const CHECK_OPEN_SUPPORT_SPECTRAL: &str = "open support implies spectral";
pub const CHECK_MAX_VALUED: &str = "specialization preserves kernel";

fn not_applicable(name: &str, why: &str) -> Check {
    Check::pass(name).with_note(format!("hypothesis not met: {why}"))
}

/// `P ⊆ Q ⟹ cl 𝔨(P) = cl 𝔨(Q)` over prime opens, closures in Vietoris `Sub A`.
pub fn closure_implication(k: &KernelMap) -> Option<(usize, usize)> {
    let kern = k.spectral_kernel();
    let v = &k.carrier.vietoris.space;
    let n = k.base.prime_count();
    for p in 0..n {
        for q in 0..n {
            if k.base.prime_open(p).is_subset(k.base.prime_open(q))
                && v.point_closure(kern[p]) != v.point_closure(kern[q])
            {
                return Some((p, q));
            }
        }
    }
    None
}

/// `⋂_{a ∈ U} U_{σ⟨a⟩}` is closed in `Σ𝒪(X)` for every carrier open `U`.
/// Returns the first carrier open where it is not.
pub fn intersection_criterion(k: &KernelMap, caps: &Caps) -> Result<Option<PointSet>> {
    let spec = &k.base.sob.spectrum;
    let sigma_line: Vec<usize> =
        (0..k.carrier.vector_count()).map(|a| k.base.open_element(&k.sigma(k.carrier.sub.line(a)))).collect();
    for u in k.carrier.fq.carrier.opens(caps)? {
        let mut s = spec.space.full();
        for a in u.iter() {
            s.intersect_with(&spec.u(sigma_line[a]));
        }
        if !spec.space.is_closed(&s) {
            return Ok(Some(u));
        }
    }
    Ok(None)
}

/// `𝔨⁻¹(W) = U_{κ⁻¹(W)}` for every Vietoris open `W`.
pub fn preimage_identity(k: &KernelMap, caps: &Caps) -> Result<Option<PointSet>> {
    let kern = k.spectral_kernel_map();
    let kappa = k.kappa_into(&k.carrier.vietoris.space);
    for w in k.carrier.vietoris.space.opens(caps)? {
        let lhs = kern.preimage(&w);
        let rhs = k.base.sob.spectrum.u(k.base.open_element(&kappa.preimage(&w)));
        if lhs != rhs {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

pub fn classify(bundle: &QVBundle, caps: &Caps) -> Result<Classification> {
    let k = &bundle.kernel;
    let criteria = k.open_support_criteria()?;
    let os = criteria.pointwise;
    let kcont = k.spectral_kernel_continuous().passed();
    let spectral = os && kcont;
    let sober = os && k.base.is_sober();
    let mut checks = Vec::new();

    checks.push(match k.kernel_below_spectral() {
        Ok(()) => Check::pass(CHECK_KERNEL_BELOW),
        Err(e) => Check::fail(CHECK_KERNEL_BELOW, Vec::new()).with_note(e.to_string()),
    });

    let implication = closure_implication(k);
    checks.push(if !os {
        not_applicable(CHECK_CLOSURE_CRITERION, "open support fails")
    } else if implication.is_none() == kcont {
        Check::pass(CHECK_CLOSURE_CRITERION)
    } else {
        let spec = &k.base.sob.spectrum.space;
        let w = implication.map_or(Vec::new(), |(p, q)| vec![spec.label(p).to_string(), spec.label(q).to_string()]);
        Check::fail(CHECK_CLOSURE_CRITERION, w).with_note(format!("kernel continuous = {kcont}"))
    });

    let inter = intersection_criterion(k, caps)?;
    checks.push(if inter.is_none() == kcont {
        Check::pass(CHECK_INTERSECTION_CRITERION)
    } else {
        let w = inter.map_or(Vec::new(), |u| u.labels(k.carrier.fq.carrier.labels()));
        Check::fail(CHECK_INTERSECTION_CRITERION, w).with_note(format!("kernel continuous = {kcont}"))
    });

    checks.push(if !(os && implication.is_none()) {
        not_applicable(CHECK_PREIMAGE_IDENTITY, "open support or closure implication fails")
    } else {
        match preimage_identity(k, caps) {
            Ok(None) => Check::pass(CHECK_PREIMAGE_IDENTITY),
            Ok(Some(w)) => Check::fail(CHECK_PREIMAGE_IDENTITY, w.labels(k.carrier.vietoris.space.labels())),
            Err(Error::CapExceeded { .. }) => {
                Check::unverified(CHECK_PREIMAGE_IDENTITY, "Vietoris opens exceed the enumeration cap")
            }
            Err(e) => return Err(e),
        }
    });

    let zero_closed = bundle.linear_op("zero section closed").is_some_and(Check::passed);
    checks.push(Check::from_bool(CHECK_ZERO_SECTION, !zero_closed || os));
    checks.push(Check::from_bool(CHECK_OPEN_SUPPORT_SPECTRAL, !os || spectral));

    checks.push(match max_subspaces(&k.carrier.fq, k.carrier.sub.clone()) {
        Ok(m) if spectral && k.kappa.iter().all(|&v| m.is_closed(v)) => {
            let x = k.space();
            let bad = x
                .points()
                .flat_map(|a| x.points().map(move |b| (a, b)))
                .find(|&(a, b)| x.specializes(a, b) && k.kappa[a] != k.kappa[b]);
            match bad {
                None => Check::pass(CHECK_MAX_VALUED),
                Some((a, b)) => Check::fail(CHECK_MAX_VALUED, vec![x.label(a).into(), x.label(b).into()]),
            }
        }
        Ok(_) => not_applicable(CHECK_MAX_VALUED, "not spectral with closed kernels"),
        Err(_) => not_applicable(CHECK_MAX_VALUED, "closed subspaces unsupported by carrier"),
    });

    Ok(Classification { open_support: os, criteria, spectral_kernel_continuous: kcont, spectral, sober, checks })
}

#[derive(Debug, Clone, Serialize)]
pub struct RadicalReport {
    pub radical: String,
    pub sections_dim: usize,
    /// One realized section per coset of the radical: vector and its values.
    pub sections: Vec<(String, Vec<String>)>,
    pub hat_injective: Check,
}

/// `rad = ⋂ₓ κ(x)`, the space of realized sections `Â = A / rad` and `a ↦ â`.
pub fn radical_and_sections(bundle: &QVBundle) -> RadicalReport {
    let sub = &bundle.carrier().sub;
    let rad = sub.lattice.meet_all(bundle.kappa().iter().copied());
    let rad_space = &sub.subspaces[rad];
    let fq = &bundle.carrier().fq;
    let mut injective = Check::pass("hat injective on quotient");
    'outer: for a in 0..fq.vector_count() {
        for b in a + 1..fq.vector_count() {
            let same_section = bundle.section(a) == bundle.section(b);
            let diff = fq.add(a, fq.scale(fq.q - 1, b));
            if same_section != sub.members[rad].contains(diff) {
                injective = Check::fail("hat injective on quotient", vec![fq.label(a).into(), fq.label(b).into()]);
                break 'outer;
            }
        }
    }
    let sections = rad_space
        .coset_reps()
        .iter()
        .map(|r| {
            let a = fq.index(r);
            (fq.label(a).to_string(), bundle.section_labels(a))
        })
        .collect();
    RadicalReport { radical: sub.key(rad), sections_dim: fq.dim - rad_space.dim(), sections, hat_injective: injective }
}

/// A contravariant morphism `ℬ → 𝒜`: `f♭ : Y → X` on bases and
/// `f* : A → B` on carriers, with the fiber map `f♯` derived.
#[derive(Debug, Clone)]
pub struct BundleMorphism {
    /// `ℬ`, over `Y`.
    pub source: Arc<QVBundle>,
    /// `𝒜`, over `X`.
    pub target: Arc<QVBundle>,
    pub f_flat: CtsMap,
    pub f_star: FqLinearMap,
    /// `f♯(e, y)` for each `(y, e)` with `π(e) = f♭(y)`, as a point of `E_ℬ`.
    pub sharp: HashMap<(usize, usize), usize>,
    pub strict: bool,
    /// `(a, y)` where the converse of the lax law fails.
    pub strict_witness: Option<(String, String)>,
    pub checks: Vec<Check>,
}

impl BundleMorphism {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn sharp_at(&self, e: usize, y: usize) -> usize {
        self.sharp[&(y, e)]
    }
}

pub fn check_morphism(
    source: Arc<QVBundle>,
    target: Arc<QVBundle>,
    f_flat: CtsMap,
    f_star: FqLinearMap,
) -> Result<BundleMorphism> {
    let (y_space, x_space) = (source.base(), target.base());
    if *f_flat.source != **y_space || *f_flat.target != **x_space {
        return Err(Error::Mismatch("f♭ must map the base of the source to the base of the target".into()));
    }
    let (afq, bfq) = (&target.carrier().fq, &source.carrier().fq);
    if f_star.q() != afq.q || f_star.q() != bfq.q || f_star.source_dim() != afq.dim || f_star.target_dim() != bfq.dim {
        return Err(Error::DimensionMismatch { expected: afq.dim, found: f_star.source_dim() });
    }
    let c = f_flat.check_continuous();
    if c.failed() {
        return Err(Error::NotContinuous(c.witness));
    }
    let (asub, bsub) = (&target.carrier().sub, &source.carrier().sub);
    let fa: Vec<usize> = (0..afq.vector_count()).map(|a| f_star.apply_index(a)).collect();
    let mut strict_witness = None;
    for y in y_space.points() {
        let kx = &asub.members[target.kappa()[f_flat.apply(y)]];
        let ky = &bsub.members[source.kappa()[y]];
        for a in 0..afq.vector_count() {
            let (zero_a, zero_b) = (kx.contains(a), ky.contains(fa[a]));
            if zero_a && !zero_b {
                return Err(Error::LaxLawViolated { a: afq.label(a).to_string(), y: y_space.label(y).to_string() });
            }
            if zero_b && !zero_a && strict_witness.is_none() {
                strict_witness = Some((afq.label(a).to_string(), y_space.label(y).to_string()));
            }
        }
    }

    let mut sharp = HashMap::new();
    let mut well_defined = Check::pass("fiber map well defined");
    for y in y_space.points() {
        let x = f_flat.apply(y);
        for a in 0..afq.vector_count() {
            let e = target.q(a, x);
            let img = source.q(fa[a], y);
            if let Some(&prev) = sharp.get(&(y, e)) {
                if prev != img && well_defined.passed() {
                    well_defined =
                        Check::fail("fiber map well defined", vec![afq.label(a).into(), y_space.label(y).into()]);
                }
            } else {
                sharp.insert((y, e), img);
            }
        }
    }

    // f♯ on the pullback Y ×_X E_𝒜, topologized as a subspace of Y × E_𝒜.
    let ne = target.points.len();
    let keep = PointSet::from_iter(
        y_space.len() * ne,
        y_space
            .points()
            .flat_map(|y| (0..ne).map(move |e| (y, e)))
            .filter(|&(y, e)| target.points[e].0 == f_flat.apply(y))
            .map(|(y, e)| y * ne + e),
    );
    let pulled = Arc::new(product(y_space, &target.total).restrict(&keep));
    let table = keep.iter().map(|ye| sharp[&(ye / ne, ye % ne)]).collect();
    let mut continuous = CtsMap::new(pulled, source.total.clone(), table)?.check_continuous();
    continuous.name = "fiber map continuous".into();

    let mut linear = Check::pass("fiber map linear");
    'lin: for y in y_space.points() {
        let fiber = target.fiber(f_flat.apply(y));
        for &e1 in &fiber {
            for c in 0..afq.q {
                if sharp[&(y, target.scale_point(c, e1))] != source.scale_point(c, sharp[&(y, e1)]) {
                    linear = Check::fail("fiber map linear", vec![target.total.label(e1).into(), c.to_string()]);
                    break 'lin;
                }
            }
            for &e2 in &fiber {
                if sharp[&(y, target.add_points(e1, e2))] != source.add_points(sharp[&(y, e1)], sharp[&(y, e2)]) {
                    linear = Check::fail(
                        "fiber map linear",
                        vec![target.total.label(e1).into(), target.total.label(e2).into()],
                    );
                    break 'lin;
                }
            }
        }
    }

    let rad_a = asub.lattice.meet_all(target.kappa().iter().copied());
    let rad_b = bsub.lattice.meet_all(source.kappa().iter().copied());
    let image = f_star.image(&asub.subspaces[rad_a])?;
    let radical = Check::from_bool("radical preserved", image.is_subspace_of(&bsub.subspaces[rad_b]));

    Ok(BundleMorphism {
        strict: strict_witness.is_none(),
        strict_witness,
        source,
        target,
        f_flat,
        f_star,
        sharp,
        checks: vec![well_defined, continuous, linear, radical],
    })
}

pub fn identity_morphism(bundle: Arc<QVBundle>) -> Result<BundleMorphism> {
    let f_flat = CtsMap::identity(bundle.base().clone());
    let f_star = FqLinearMap::identity(bundle.carrier().fq.q, bundle.carrier().fq.dim);
    check_morphism(bundle.clone(), bundle, f_flat, f_star)
}

/// `f ∘ g` for `g : 𝒞 → ℬ` and `f : ℬ → 𝒜`: bases compose as `f♭ ∘ g♭`,
/// carriers as `g* ∘ f*`. The fiber map is checked against
/// `(f∘g)♯(e, z) = g♯(f♯(e, g♭ z), z)`.
pub fn compose_morphisms(f: &BundleMorphism, g: &BundleMorphism) -> Result<BundleMorphism> {
    if !g.target.same_as(&f.source) {
        return Err(Error::Mismatch("morphisms are not composable".into()));
    }
    let flat = g.f_flat.then(&f.f_flat)?;
    let star = f.f_star.then(&g.f_star)?;
    let mut h = check_morphism(g.source.clone(), f.target.clone(), flat, star)?;
    let consistent = h.sharp.iter().all(|(&(z, e), &img)| {
        let mid = f.sharp[&(g.f_flat.apply(z), e)];
        g.sharp[&(z, mid)] == img
    });
    h.checks.push(Check::from_bool("composite fiber map", consistent));
    Ok(h)
}

/// Pullback `f*(𝒜)` along `f : Y → X` with kernel `κ ∘ f`, and the canonical
/// morphism `(f, id_A) : f*(𝒜) → 𝒜`.
pub fn pullback(f: &CtsMap, bundle: Arc<QVBundle>, caps: &Caps) -> Result<(Arc<QVBundle>, BundleMorphism)> {
    if *f.target != **bundle.base() {
        return Err(Error::Mismatch("pullback map must land in the bundle base".into()));
    }
    let c = f.check_continuous();
    if c.failed() {
        return Err(Error::NotContinuous(c.witness));
    }
    let kappa = f.table.iter().map(|&x| bundle.kappa()[x]).collect();
    let pulled = Arc::new(QVBundle::from_space(f.source.clone(), bundle.carrier().clone(), kappa, caps)?);
    let id = FqLinearMap::identity(bundle.carrier().fq.q, bundle.carrier().fq.dim);
    let m = check_morphism(pulled.clone(), bundle, f.clone(), id)?;
    if !m.strict {
        return Err(Error::Invariant("pullback morphism is not strict".into()));
    }
    Ok((pulled, m))
}

#[derive(Debug, Clone, Serialize)]
pub struct SectionMap {
    /// Source section vector, and the image section's values over the source base.
    pub images: Vec<(String, Vec<String>)>,
    pub commutes: Check,
}

/// The induced map on sections: `s ↦ (y ↦ f♯(s(f♭ y), y))`, checked against
/// `â ↦ (f* a)^`.
pub fn section_map(f: &BundleMorphism) -> SectionMap {
    let afq = &f.target.carrier().fq;
    let y_space = f.source.base();
    let mut commutes = Check::pass("section map commutes");
    let mut images = Vec::new();
    for a in 0..afq.vector_count() {
        let s = f.target.section(a);
        let values: Vec<usize> = y_space.points().map(|y| f.sharp_at(s.apply(f.f_flat.apply(y)), y)).collect();
        let expected = f.source.section(f.f_star.apply_index(a));
        if values != expected.table && commutes.passed() {
            commutes = Check::fail("section map commutes", vec![afq.label(a).into()]);
        }
        images.push((afq.label(a).to_string(), values.iter().map(|&e| f.source.total.label(e).to_string()).collect()));
    }
    SectionMap { images, commutes }
}

/// Every kernel map `X → Sub A` passing `filter`, ordered lexicographically by
/// point order and canonical subspace order.
pub fn enumerate_kernel_maps(
    base: Arc<Base>,
    carrier: Arc<Carrier>,
    filter: Filter,
    caps: &Caps,
) -> Result<Vec<Vec<usize>>> {
    let (n, s) = (base.space.len(), carrier.sub.len());
    let total = (s as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    caps.check("kernel maps", total)?;
    let mut out = Vec::new();
    let mut kappa = vec![0usize; n];
    loop {
        let k = KernelMap::new(base.clone(), carrier.clone(), kappa.clone())?;
        if k.passes(filter)? {
            out.push(kappa.clone());
        }
        let Some(i) = kappa.iter().rposition(|&v| v + 1 < s) else { break };
        kappa[i] += 1;
        for v in kappa[i + 1..].iter_mut() {
            *v = 0;
        }
    }
    Ok(out)
}

/// Named bundles and spaces shared by tests, the CLI corpus and the demo.
pub mod named {
    use super::*;
    use crate::space::named::{discrete2, indiscrete2, sierpinski};

    pub fn f2(caps: &Caps) -> Arc<Carrier> {
        Arc::new(Carrier::discrete(2, 1, caps).expect("F2 carrier"))
    }

    fn over(space: FinSpace, keys: &[&str], caps: &Caps) -> Arc<QVBundle> {
        let carrier = f2(caps);
        let kappa = keys.iter().map(|k| carrier.sub.index_of_key(k).expect("subspace key")).collect();
        Arc::new(QVBundle::from_space(Arc::new(space), carrier, kappa, caps).expect("named bundle"))
    }

    /// Trivial bundle over the Sierpiński space.
    pub fn b1(caps: &Caps) -> Arc<QVBundle> {
        over(sierpinski(), &["0:", "0:"], caps)
    }

    /// `κ(x0) = O`, `κ(x1) = W` over the Sierpiński space.
    pub fn b2(caps: &Caps) -> Arc<QVBundle> {
        over(sierpinski(), &["0:", "1:1"], caps)
    }

    /// `κ(y0) = O`, `κ(y1) = W` over the discrete two-point space.
    pub fn b3(caps: &Caps) -> Arc<QVBundle> {
        over(discrete2(), &["0:", "1:1"], caps)
    }

    /// Trivial bundle over the indiscrete two-point space.
    pub fn b4(caps: &Caps) -> Arc<QVBundle> {
        over(indiscrete2(), &["0:", "0:"], caps)
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;
    use crate::space::named::{discrete2, sierpinski};

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn total_space_sizes() {
        assert_eq!(b1(&caps()).total.len(), 4);
        assert_eq!(b2(&caps()).total.len(), 3);
        let f22 = Arc::new(Carrier::discrete(2, 2, &caps()).unwrap());
        let t = QVBundle::trivial(Base::new(Arc::new(discrete2()), &caps()).unwrap(), f22).unwrap();
        assert_eq!(t.total.len(), 8);
        let f20 = Arc::new(Carrier::discrete(2, 0, &caps()).unwrap());
        let t0 = QVBundle::trivial(Base::new(Arc::new(sierpinski()), &caps()).unwrap(), f20).unwrap();
        assert_eq!(t0.total.len(), 2);
    }

    #[test]
    fn discontinuous_kernel_rejected() {
        let carrier = f2(&caps());
        let w = carrier.sub.whole();
        let err = QVBundle::from_space(Arc::new(sierpinski()), carrier, vec![w, 0], &caps()).unwrap_err();
        assert_eq!(err, Error::KernelNotContinuous { point: "x0".into(), open: vec!["1:1".into()] });
    }

    #[test]
    fn supports_and_sigma_gamma() {
        let b1 = b1(&caps());
        let k = &b1.kernel;
        let x = k.space();
        assert_eq!(k.open_support(1), &x.full());
        assert!(k.open_support(0).is_empty());
        assert_eq!(k.sigma(k.carrier.sub.whole()), x.full());
        assert_eq!(k.gamma(&x.set_of(&["x1"]).unwrap()), k.carrier.sub.zero());
        assert_eq!(k.gamma(&x.full()), k.carrier.sub.whole());
        let r = k.verify_sigma_gamma().unwrap();
        assert!(r.adjunction.passed() && r.gamma_sets_are_subspaces.passed());

        let b2 = b2(&caps());
        let k = &b2.kernel;
        assert_eq!(k.nonzero_set(1), &k.space().set_of(&["x0"]).unwrap());
        assert!(k.open_support(1).is_empty());
        assert!(k.sigma(k.carrier.sub.whole()).is_empty());
        assert_eq!(k.gamma(&k.space().empty_set()), k.carrier.sub.whole());
        assert!(k.verify_sigma_gamma().unwrap().adjunction.passed());
    }

    #[test]
    fn spectral_kernels() {
        let c = caps();
        let b1 = b1(&c);
        assert!(b1.kernel.spectral_kernel().iter().all(|&v| v == 0));
        let b2 = b2(&c);
        assert!(b2.kernel.spectral_kernel().iter().all(|&v| v == b2.carrier().sub.whole()));
        assert!(b2.kernel.spectral_kernel_continuous().passed());
        let b4 = b4(&c);
        assert_eq!(b4.kernel.spectral_kernel(), vec![0]);
    }

    #[test]
    fn classification_examples() {
        let c = caps();
        let r1 = classify(&b1(&c), &c).unwrap();
        assert!(r1.open_support && r1.spectral && r1.sober && r1.all_checks_pass());
        let r2 = classify(&b2(&c), &c).unwrap();
        assert!(!r2.open_support && !r2.spectral && r2.spectral_kernel_continuous);
        assert_eq!(r2.criteria.witness.as_deref(), Some("1"));
        assert!(r2.all_checks_pass());
        let r4 = classify(&b4(&c), &c).unwrap();
        assert!(r4.open_support && r4.spectral && !r4.sober && r4.all_checks_pass());
    }

    #[test]
    fn radicals() {
        let c = caps();
        let r3 = radical_and_sections(&b3(&c));
        assert_eq!(r3.radical, "0:");
        assert_eq!(r3.sections_dim, 1);
        assert!(r3.hat_injective.passed());
        let carrier = f2(&c);
        let w = carrier.sub.whole();
        let all_w = QVBundle::from_space(Arc::new(sierpinski()), carrier, vec![w, w], &c).unwrap();
        let r = radical_and_sections(&all_w);
        assert_eq!((r.radical.as_str(), r.sections_dim), ("1:1", 0));
        assert_eq!(radical_and_sections(&b1(&c)).radical, "0:");
    }

    fn d2_to_s() -> CtsMap {
        CtsMap::new(Arc::new(discrete2()), Arc::new(sierpinski()), vec![0, 1]).unwrap()
    }

    #[test]
    fn morphism_examples() {
        let c = caps();
        let id = FqLinearMap::identity(2, 1);
        let m = check_morphism(b3(&c), b1(&c), d2_to_s(), id.clone()).unwrap();
        assert!(!m.strict);
        assert_eq!(m.strict_witness, Some(("1".into(), "y1".into())));
        assert!(m.all_checks_pass());

        let idm = identity_morphism(b1(&c)).unwrap();
        assert!(idm.strict && idm.all_checks_pass());

        let s = Arc::new(sierpinski());
        let err = check_morphism(b1(&c), b2(&c), CtsMap::identity(s), id).unwrap_err();
        assert_eq!(err, Error::LaxLawViolated { a: "1".into(), y: "x1".into() });
    }

    #[test]
    fn section_transport() {
        let c = caps();
        let m = check_morphism(b3(&c), b1(&c), d2_to_s(), FqLinearMap::identity(2, 1)).unwrap();
        let sm = section_map(&m);
        assert!(sm.commutes.passed());
        let one = &sm.images[1];
        assert_eq!(one.0, "1");
        assert_eq!(one.1, vec!["y0|1".to_string(), "y1|0".to_string()]);
    }

    #[test]
    fn composition_laws() {
        let c = caps();
        let f = check_morphism(b3(&c), b1(&c), d2_to_s(), FqLinearMap::identity(2, 1)).unwrap();
        let id3 = identity_morphism(b3(&c)).unwrap();
        let id1 = identity_morphism(b1(&c)).unwrap();
        let right = compose_morphisms(&f, &id3).unwrap();
        let left = compose_morphisms(&id1, &f).unwrap();
        for h in [&right, &left] {
            assert_eq!(h.f_flat, f.f_flat);
            assert_eq!(h.f_star, f.f_star);
            assert_eq!(h.sharp, f.sharp);
            assert!(h.all_checks_pass());
        }
        assert!(matches!(compose_morphisms(&id3, &f), Err(Error::Mismatch(_))));
    }

    #[test]
    fn pullbacks() {
        let c = caps();
        let (p, m) = pullback(&d2_to_s(), b1(&c), &c).unwrap();
        assert_eq!(p.kappa(), &[0, 0]);
        assert!(m.strict);
        let id = CtsMap::identity(b1(&c).base().clone());
        let (same, _) = pullback(&id, b1(&c), &c).unwrap();
        assert!(same.same_as(&b1(&c)));
        let d2 = Arc::new(discrete2());
        let constant = CtsMap::new(d2.clone(), d2, vec![0, 0]).unwrap();
        let (p3, _) = pullback(&constant, b3(&c), &c).unwrap();
        assert_eq!(p3.kappa(), &[0, 0]);
    }

    #[test]
    fn kernel_map_census() {
        let c = caps();
        let s = Base::new(Arc::new(sierpinski()), &c).unwrap();
        let count = |base: &Arc<Base>, f| enumerate_kernel_maps(base.clone(), f2(&c), f, &c).unwrap().len();
        assert_eq!(count(&s, Filter::Continuous), 3);
        assert_eq!(count(&s, Filter::OpenSupport), 2);
        assert_eq!(count(&s, Filter::Spectral), 2);
        assert_eq!(count(&s, Filter::Sober), 2);
        let d = Base::new(Arc::new(discrete2()), &c).unwrap();
        assert_eq!(count(&d, Filter::Continuous), 4);
        let listed = enumerate_kernel_maps(s, f2(&c), Filter::Continuous, &c).unwrap();
        assert_eq!(listed, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn universal_bundle_over_vietoris_sub() {
        let c = caps();
        let carrier = Arc::new(Carrier::discrete(2, 2, &c).unwrap());
        let base = carrier.vietoris.space.clone();
        let kappa = (0..carrier.sub.len()).collect();
        let u = QVBundle::from_space(base, carrier, kappa, &c).unwrap();
        assert_eq!(u.total.len(), 4 + 2 * 3 + 1);
        let r = classify(&u, &c).unwrap();
        assert!(r.all_checks_pass());
    }

    #[test]
    fn linear_ops_for_discrete_carrier() {
        let c = caps();
        let b = b2(&c);
        for name in ["zero section continuous", "addition continuous", "scalar action continuous"] {
            assert!(b.linear_op(name).unwrap().passed(), "{name}");
        }
    }
}
