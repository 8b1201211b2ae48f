//! Acceptance suite: one PASS/FAIL line per criterion, exhaustive where the
//! objects are small enough and compared against brute-force oracles.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use pfk::bundle::named::{b1, b2, b3, b4};
use pfk::bundle::{check_morphism, classify, enumerate_kernel_maps, Base, BundleMorphism, Filter, QVBundle};
use pfk::frame::{spatialization, spectrum_laws, spectrum_space, Locale};
use pfk::hyper::{alexandrov, spectrum_topology, topology_compare, Carrier, Comparison, Kind};
use pfk::linfq::{all_linear_maps, enumerate_subspaces, vector_at, vector_count, SubLattice};
use pfk::linloc::named::{c3, constant_zero, l1, trivial};
use pfk::linloc::{
    adjunction_transpose, counit_spat, hom_census, linloc_from_labels, spec_bundle, triangle_omega, triangle_spec,
    unit_sob, LinLocale,
};
use pfk::order::{
    adjoint, boolean, chain, check_join_preserving, validate_lattice, verify_adjunction, FinLattice, LatticeMap, Level,
    RawOrder, Side,
};
use pfk::space::named::{all_topologies, discrete2, indiscrete2, sierpinski};
use pfk::space::{all_continuous_maps, open_locale, separation_report, FinSpace};
use pfk::{Caps, Error};

type Outcome = Result<String, String>;

fn caps() -> Caps {
    Caps::default()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

/// Lattice of down-sets of a poset given by its strict order matrix.
fn downset_lattice(lt: &[Vec<bool>]) -> FinLattice {
    let n = lt.len();
    let downsets: Vec<usize> = (0..1usize << n)
        .filter(|&m| (0..n).all(|x| m >> x & 1 == 0 || (0..n).all(|y| !lt[y][x] || m >> y & 1 == 1)))
        .collect();
    let labels = downsets.iter().map(|m| format!("d{m}")).collect();
    let ds = downsets.clone();
    let pos = move |m: usize| ds.iter().position(|&d| d == m).expect("closed under ∪ and ∩");
    let (p1, p2) = (pos.clone(), pos);
    let (d1, d2, d3) = (downsets.clone(), downsets.clone(), downsets);
    FinLattice::from_parts(
        labels,
        move |a, b| d1[a] & d1[b] == d1[a],
        move |a, b| p1(d2[a] | d2[b]),
        move |a, b| p2(d3[a] & d3[b]),
    )
    .expect("down-sets form a lattice")
}

fn random_distributive(rng: &mut StdRng) -> FinLattice {
    loop {
        let n = rng.gen_range(1..=4);
        let mut lt = vec![vec![false; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                lt[i][j] = rng.gen_bool(0.4);
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if lt[i][k] && lt[k][j] {
                        lt[i][j] = true;
                    }
                }
            }
        }
        let l = downset_lattice(&lt);
        if l.len() <= 10 {
            return l;
        }
    }
}

fn lattice_corpus() -> Vec<(String, Arc<FinLattice>)> {
    let c = caps();
    let mut out: Vec<(String, Arc<FinLattice>)> = Vec::new();
    for n in 1..=5 {
        let labels: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        out.push((format!("chain {n}"), Arc::new(chain(&refs))));
    }
    for n in 0..=4 {
        out.push((format!("boolean 2^{n}"), Arc::new(boolean(n))));
    }
    for n in 1..=3 {
        out.push((format!("Sub F2^{n}"), SubLattice::new(2, n, &c).unwrap().lattice.clone()));
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for i in 0..8 {
        out.push((format!("random distributive {i}"), Arc::new(random_distributive(&mut rng))));
    }
    out
}

/// Every join-preserving map `l → m`, filtered from all bottom-preserving tables.
fn join_preserving_maps(l: &Arc<FinLattice>, m: &Arc<FinLattice>) -> Vec<LatticeMap> {
    let c = caps();
    let free: Vec<usize> = l.elements().filter(|&a| a != l.bottom()).collect();
    let total = (m.len() as u64).pow(free.len() as u32);
    (0..total)
        .filter_map(|code| {
            let mut table = vec![m.bottom(); l.len()];
            let mut rest = code;
            for &a in &free {
                table[a] = (rest % m.len() as u64) as usize;
                rest /= m.len() as u64;
            }
            let f = LatticeMap::new(l.clone(), m.clone(), table).ok()?;
            check_join_preserving(&f, &c).passed().then_some(f)
        })
        .collect()
}

fn adjoint_correctness() -> Outcome {
    let c = caps();
    let corpus = lattice_corpus();
    ensure(corpus.len() >= 20, || format!("corpus has {} lattices", corpus.len()))?;
    let mut checked = 0;
    for (i, (na, a)) in corpus.iter().enumerate() {
        for (nb, b) in corpus.iter().skip(i).take(3) {
            if (b.len() as f64).powi(a.len() as i32 - 1) > 2e5 {
                continue;
            }
            for f in join_preserving_maps(a, b) {
                let g = adjoint(&f, Side::RightOfJoinPreserving, &c).map_err(err)?;
                let oracle = a.elements().all(|x| b.elements().all(|y| b.leq(f.apply(x), y) == a.leq(x, g.apply(y))));
                let verdict = verify_adjunction(&f, &g).map_err(err)?;
                ensure(oracle && verdict.passed(), || format!("{na} → {nb}: {f}"))?;
                checked += 1;
            }
        }
    }
    ensure(checked > 0, || "no maps checked".into())?;
    Ok(format!("{} lattices, {checked} join-preserving maps", corpus.len()))
}

fn spectrum_laws_hold() -> Outcome {
    let c = caps();
    let mut frames = 0;
    for (name, l) in lattice_corpus() {
        let Ok(locale) = Locale::new(l.clone()) else { continue };
        let s = spectrum_space(&locale).map_err(err)?;
        let us: Vec<_> = l.elements().map(|a| s.u(a)).collect();
        ensure(spectrum_laws(&l, &us).passed(), || format!("{name}: spectrum laws"))?;
        ensure(spatialization(&locale, &c).map_err(err)?.is_spatial, || format!("{name}: not spatial"))?;
        frames += 1;
    }
    for x in all_topologies(3, false) {
        let o = open_locale(Arc::new(x), &c).map_err(err)?;
        let locale = Locale::new(o.lattice().clone()).map_err(err)?;
        ensure(spatialization(&locale, &c).map_err(err)?.is_spatial, || "open-set frame not spatial".into())?;
        frames += 1;
    }
    Ok(format!("{frames} frames"))
}

/// Families of subsets of an `n`-set containing ∅ and the whole set and
/// closed under binary union and intersection.
fn brute_force_topology_count(n: usize) -> usize {
    let full = (1u32 << n) - 1;
    let middle: Vec<u32> = (1..full).collect();
    let mut count = 0;
    for pick in 0u64..1 << middle.len() {
        let mut fam = vec![0u32, full];
        fam.extend(middle.iter().enumerate().filter(|(i, _)| pick >> i & 1 == 1).map(|(_, &s)| s));
        let mut member = vec![false; 1 << n];
        for &s in &fam {
            member[s as usize] = true;
        }
        if fam.iter().all(|&a| fam.iter().all(|&b| member[(a | b) as usize] && member[(a & b) as usize])) {
            count += 1;
        }
    }
    count
}

fn sober_iff_t0() -> Outcome {
    let c = caps();
    let mut total = 0;
    for n in 0..=4 {
        let tops = all_topologies(n, false);
        let oracle = if n == 0 { 1 } else { brute_force_topology_count(n) };
        ensure(tops.len() == oracle, || format!("{n} points: {} topologies, oracle {oracle}", tops.len()))?;
        for x in tops {
            let r = separation_report(&Arc::new(x), &c).map_err(err)?;
            ensure(r.sober == r.t0, || format!("sober {} but T0 {}", r.sober, r.t0))?;
            total += 1;
        }
    }
    ensure(all_topologies(4, false).len() == 355, || "355 topologies on 4 points".into())?;
    Ok(format!("{total} topologies on ≤ 4 points"))
}

/// Subsets of `F_q^n` containing 0 and closed under addition and scaling.
fn brute_force_subspace_count(q: u32, n: usize) -> usize {
    let size = vector_count(q, n).unwrap();
    let vecs: Vec<Vec<u32>> = (0..size).map(|i| vector_at(i, q, n)).collect();
    let index = |v: &[u32]| vecs.iter().position(|w| w == v).unwrap();
    (0u64..1 << size)
        .filter(|&m| {
            m & 1 == 1
                && (0..size).filter(|&i| m >> i & 1 == 1).all(|i| {
                    (0..size).filter(|&j| m >> j & 1 == 1).all(|j| {
                        let sum: Vec<u32> = (0..n).map(|k| (vecs[i][k] + vecs[j][k]) % q).collect();
                        m >> index(&sum) & 1 == 1
                    }) && (1..q).all(|s| {
                        let v: Vec<u32> = vecs[i].iter().map(|x| x * s % q).collect();
                        m >> index(&v) & 1 == 1
                    })
                })
        })
        .count()
}

fn subspace_counts() -> Outcome {
    let c = caps();
    let mut got = Vec::new();
    for (q, n, expected) in [(2, 1, 2), (2, 2, 5), (2, 3, 16), (3, 1, 2), (3, 2, 6)] {
        let count = enumerate_subspaces(q, n, &c).map_err(err)?.len();
        let oracle = brute_force_subspace_count(q, n);
        ensure(count == oracle && count == expected, || format!("(q,n) = ({q},{n}): {count} vs oracle {oracle}"))?;
        got.push(count.to_string());
    }
    Ok(format!("counts {}", got.join(", ")))
}

fn vietoris_is_alexandrov() -> Outcome {
    let c = caps();
    for n in 1..=3 {
        let carrier = Carrier::discrete(2, n, &c).map_err(err)?;
        let v = spectrum_topology(&carrier.fq, carrier.sub.clone(), Kind::Vietoris, &c).map_err(err)?;
        let cmp = topology_compare(&v.space, &alexandrov(&carrier.sub)).map_err(err)?;
        ensure(cmp == Comparison::Equal, || format!("n = {n}: {cmp:?}"))?;
        let os = &carrier.open_support.space;
        ensure(os.points().all(|p| os.nbhd(p).len() == 1), || format!("n = {n}: open support not discrete"))?;
        let t1 = os.points().all(|x| os.points().all(|y| x == y || !os.specializes(x, y)));
        ensure(t1, || format!("n = {n}: not T1"))?;
    }
    Ok("Sub F2^n, n ≤ 3".into())
}

fn classifier_coherence() -> Outcome {
    let c = caps();
    let mut spaces: Vec<FinSpace> = all_topologies(3, true);
    spaces.extend([sierpinski(), discrete2(), indiscrete2()]);
    let carriers =
        [Arc::new(Carrier::discrete(2, 1, &c).map_err(err)?), Arc::new(Carrier::discrete(2, 2, &c).map_err(err)?)];
    let mut bundles = 0;
    for x in &spaces {
        let base = Base::new(Arc::new(x.clone()), &c).map_err(err)?;
        for carrier in &carriers {
            for kappa in enumerate_kernel_maps(base.clone(), carrier.clone(), Filter::Continuous, &c).map_err(err)? {
                let b = QVBundle::build(base.clone(), carrier.clone(), kappa).map_err(err)?;
                // A disagreement among the open-support criteria is an error here.
                let cl = classify(&b, &c).map_err(err)?;
                let crit = &cl.criteria;
                ensure(
                    crit.pointwise == crit.factorization && crit.factorization == crit.open_support_topology,
                    || "criteria disagree".into(),
                )?;
                if let Some(bad) = cl.checks.iter().find(|k| !k.passed()) {
                    return Err(format!("{:?}: {} failed", b.kappa(), bad.name));
                }
                bundles += 1;
            }
        }
    }
    let s = Base::new(Arc::new(sierpinski()), &c).map_err(err)?;
    let census: Vec<usize> = [Filter::Continuous, Filter::OpenSupport, Filter::Spectral]
        .into_iter()
        .map(|f| enumerate_kernel_maps(s.clone(), carriers[0].clone(), f, &c).map(|v| v.len()))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    ensure(census == [3, 2, 2], || format!("(S, F2) census {census:?}"))?;
    Ok(format!("{} spaces, {bundles} bundles, 0 disagreements", spaces.len()))
}

/// Every bundle morphism `a → spec(b)`.
fn bundle_morphisms(a: &Arc<QVBundle>, target: &Arc<QVBundle>) -> Result<Vec<BundleMorphism>, String> {
    let c = caps();
    let (qa, qt) = (&a.carrier().fq, &target.carrier().fq);
    let mut out = Vec::new();
    for flat in all_continuous_maps(a.base(), target.base(), &c).map_err(err)? {
        for star in all_linear_maps(qt.q, qt.dim, qa.dim, &c).map_err(err)? {
            match check_morphism(a.clone(), target.clone(), flat.clone(), star) {
                Ok(m) => out.push(m),
                Err(Error::LaxLawViolated { .. }) => {}
                Err(e) => return Err(err(e)),
            }
        }
    }
    Ok(out)
}

fn adjunction_verified() -> Outcome {
    let c = caps();
    let pairs: Vec<(&str, Arc<QVBundle>, &str, Arc<LinLocale>)> = vec![
        ("B1", b1(&c), "L1", l1(&c)),
        ("B3", b3(&c), "L1", l1(&c)),
        ("B4", b4(&c), "L1", l1(&c)),
        ("B1", b1(&c), "L1 with σ = 0", constant_zero(&c)),
        ("B3", b3(&c), "L1 with σ = 0", constant_zero(&c)),
        ("B4", b4(&c), "trivial", trivial(&c)),
    ];
    let mut homs = 0;
    for (na, a, nb, b) in &pairs {
        let label = format!("({na}, {nb})");
        let census = hom_census(a.clone(), b.clone(), &c).map_err(err)?;
        ensure(census.bijection.passed() && census.strict_bijection.passed(), || {
            format!("{label}: hom-set bijection")
        })?;
        ensure(triangle_spec(b.clone(), &c).map_err(err)?.passed(), || format!("{label}: Spec triangle"))?;
        ensure(triangle_omega(a.clone(), &c).map_err(err)?.passed(), || format!("{label}: Ω triangle"))?;
        let unit = unit_sob(a.clone(), &c).map_err(err)?;
        ensure(unit.iso == a.kernel.base.is_sober(), || format!("{label}: unit iso ⟺ sober"))?;
        let counit = counit_spat(b.clone(), &c).map_err(err)?;
        let spatial = spatialization(&b.locale, &c).map_err(err)?.is_spatial;
        ensure(counit.iso == spatial, || format!("{label}: counit iso ⟺ spatial"))?;
        let spec = spec_bundle(b, &c).map_err(err)?;
        let morphisms = bundle_morphisms(a, &spec.bundle)?;
        ensure(morphisms.len() == census.bundle_morphisms, || format!("{label}: census count"))?;
        for f in &morphisms {
            let t = adjunction_transpose(f, b.clone(), &c).map_err(err)?;
            ensure(t.uniqueness.passed() && t.round_trip.passed(), || format!("{label}: transpose not unique"))?;
            homs += 1;
        }
    }
    Ok(format!("{} pairs, {homs} transposes unique", pairs.len()))
}

fn negative_controls() -> Outcome {
    let c = caps();
    let cl = classify(&b2(&c), &c).map_err(err)?;
    ensure(!cl.spectral && cl.spectral_kernel_continuous, || "B2 should be non-spectral with continuous 𝔨".into())?;
    ensure(cl.criteria.witness.as_deref() == Some("1"), || format!("B2 witness {:?}", cl.criteria.witness))?;
    let carrier = b1(&c).carrier().clone();
    match linloc_from_labels(c3(), carrier, &[("0:", "0"), ("1:1", "m")], &c) {
        Err(Error::SpectralKernelNotContinuous(_)) => {}
        other => return Err(format!("σ(W) = m accepted: {:?}", other.map(|_| ()))),
    }
    let m3 = RawOrder::new(
        ["0", "a", "b", "c", "1"],
        &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    );
    let report = validate_lattice(&m3, Level::Frame, &c).map_err(err)?;
    let dist = report.check("binary distributivity").ok_or("no distributivity verdict")?;
    ensure(!report.passed() && dist.witness == ["a", "b", "c"], || format!("M3 witness {:?}", dist.witness))?;
    Ok("B2, σ(W) = m, M3 rejected".into())
}

fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap()
}

const CLI_RUNS: &[(&str, &[&str])] = &[
    ("lattice-check-c3", &["lattice-check", "--lattice", "data/c3.json"]),
    ("lattice-check-m3", &["lattice-check", "--lattice", "data/m3.json", "--level", "frame"]),
    ("primes-c3", &["primes", "--lattice", "data/c3.json"]),
    ("spectrum-b2x2", &["spectrum", "--lattice", "data/b2x2.json"]),
    ("soberify-i2", &["soberify", "--space", "data/I2.json"]),
    ("subspaces-q3d2", &["subspaces", "--fq", "data/q3d2.json"]),
    ("spec-topology-q2d2", &["spec-topology", "--fq", "data/q2d2.json", "--topology", "open-support"]),
    ("bundle-build-b3", &["bundle-build", "--bundle", "data/B3.json"]),
    ("bundle-classify-b2", &["bundle-classify", "--bundle", "data/B2.json"]),
    (
        "bundle-enumerate-s",
        &["bundle-enumerate", "--space", "data/S.json", "--fq", "data/q2d1.json", "--filter", "spectral"],
    ),
    (
        "morphism-check-b2-b1",
        &["morphism-check", "--source", "data/B2.json", "--target", "data/B1.json", "--morphism", "data/B2_to_B1.json"],
    ),
    ("linloc-check-l1", &["linloc-check", "--linloc", "data/L1.json"]),
    ("spec-l1", &["spec", "--linloc", "data/L1.json"]),
    ("omega-b4", &["omega", "--bundle", "data/B4.json"]),
    (
        "transpose-b3-l1",
        &["transpose", "--bundle", "data/B3.json", "--linloc", "data/L1.json", "--morphism", "data/B3_to_specL1.json"],
    ),
    ("adjunction-census-b3-l1", &["adjunction-census", "--bundle", "data/B3.json", "--linloc", "data/L1.json"]),
    ("dot-bundle-b3", &["dot", "--bundle", "data/B3.json"]),
];

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pfk"))
        .args(args)
        .current_dir(workspace_root())
        .env_remove("PFK_CAP")
        .output()
        .expect("pfk runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8"))
}

fn cli_determinism() -> Outcome {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let bless = std::env::var_os("PFK_BLESS").is_some();
    for (name, args) in CLI_RUNS {
        let runs: Vec<(i32, String)> = (0..3).map(|_| run_cli(args)).collect();
        ensure(runs.iter().all(|r| *r == runs[0]), || format!("{name}: runs differ"))?;
        let path = golden.join(format!("{name}.json"));
        if bless {
            std::fs::create_dir_all(&golden).unwrap();
            std::fs::write(&path, &runs[0].1).unwrap();
        }
        let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        ensure(runs[0].1 == expected, || format!("{name}: differs from golden file"))?;
    }
    Ok(format!("{} reports × 3 runs", CLI_RUNS.len()))
}

fn main() {
    let criteria: &[(&str, fn() -> Outcome)] = &[
        ("adjoint correctness", adjoint_correctness),
        ("spectrum laws and spatiality", spectrum_laws_hold),
        ("sober iff T0 on finite spaces", sober_iff_t0),
        ("subspace counts", subspace_counts),
        ("Vietoris equals Alexandrov under discrete carriers", vietoris_is_alexandrov),
        ("bundle classifier coherence", classifier_coherence),
        ("Ω ⊣ Spec verified exhaustively", adjunction_verified),
        ("negative controls", negative_controls),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail} ({secs:.1}s)");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
