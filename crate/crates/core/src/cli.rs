//! Batch command-line front end. Every command prints one JSON report.
//!
//! Exit codes: 0 when every verdict passes, 1 when a property verdict fails
//! (or could not be established within the caps), 2 on invalid input.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{ArgGroup, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::bundle::{
    check_morphism, classify, enumerate_kernel_maps, radical_and_sections, section_map, Base, Filter, QVBundle,
};
use crate::dot::{bundle_dot, edge_count, lattice_dot, node_count, space_dot};
use crate::frame::{primes, spatialization, spectrum_summary};
use crate::hyper::{refinement_chain, spectrum_topology, topology_compare, Carrier, Kind};
use crate::linfq::SubLattice;
use crate::linloc::{
    adjunction_transpose, counit_spat, hom_census, max_variant_check, omega_linloc, spec_bundle, triangle_omega,
    triangle_spec, unit_sob, LinLocale,
};
use crate::order::{validate_lattice, Level};
use crate::schema::{
    load_bundle, load_bundle_morphism, load_fq, load_lattice, load_linloc, load_locale, load_order, load_space,
    parse_json,
};
use crate::space::{separation_report, soberify, FinSpace};
use crate::{Caps, Check, Error, Result, Status};

#[derive(Debug, Parser)]
#[command(name = "pfk", version, about = "Finite pointfree topology toolkit")]
pub struct Cli {
    /// Enumeration cap (overrides PFK_CAP).
    #[arg(long, global = true)]
    pub cap: Option<u64>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a finite order as a poset, sup-lattice or frame.
    LatticeCheck {
        #[arg(long, alias = "in")]
        lattice: PathBuf,
        #[arg(long, default_value = "frame")]
        level: String,
    },
    /// Prime elements of a finite lattice.
    Primes {
        #[arg(long, alias = "in")]
        lattice: PathBuf,
    },
    /// Spectrum space of a finite locale.
    Spectrum {
        #[arg(long, alias = "in")]
        lattice: PathBuf,
    },
    /// Separation axioms and soberification of a finite space.
    Soberify {
        #[arg(long, alias = "in")]
        space: PathBuf,
    },
    /// Subspace lattice of F_q^n.
    Subspaces {
        #[arg(long, alias = "in")]
        fq: PathBuf,
    },
    /// A topology on Sub A.
    SpecTopology {
        #[arg(long, alias = "in")]
        fq: PathBuf,
        #[arg(long, default_value = "vietoris")]
        topology: String,
    },
    /// Build a quotient vector bundle from its kernel map.
    BundleBuild {
        #[arg(long, alias = "in")]
        bundle: PathBuf,
    },
    /// Open support, spectral and sober classification of a bundle.
    BundleClassify {
        #[arg(long, alias = "in")]
        bundle: PathBuf,
    },
    /// Enumerate kernel maps over a space.
    BundleEnumerate {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        fq: PathBuf,
        #[arg(long, default_value = "continuous")]
        filter: String,
    },
    /// Check a bundle morphism source → target.
    MorphismCheck {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, alias = "in")]
        morphism: PathBuf,
    },
    /// Validate a linearized locale.
    LinlocCheck {
        #[arg(long, alias = "in")]
        linloc: PathBuf,
    },
    /// The spectrum bundle of a linearized locale.
    Spec {
        #[arg(long, alias = "in")]
        linloc: PathBuf,
    },
    /// The linearized locale of a spectral bundle.
    Omega {
        #[arg(long, alias = "in")]
        bundle: PathBuf,
    },
    /// Transpose a bundle morphism into the spectrum of a linearized locale.
    Transpose {
        #[arg(long)]
        bundle: PathBuf,
        #[arg(long)]
        linloc: PathBuf,
        #[arg(long, alias = "in")]
        morphism: PathBuf,
    },
    /// Compare hom-sets across the adjunction and check the triangle identities.
    AdjunctionCensus {
        #[arg(long)]
        bundle: PathBuf,
        #[arg(long)]
        linloc: PathBuf,
    },
    /// Graphviz export of a lattice, space, subspace lattice or bundle kernel.
    #[command(group(ArgGroup::new("object").required(true).args(["lattice", "space", "fq", "bundle"])))]
    Dot {
        #[arg(long)]
        lattice: Option<PathBuf>,
        #[arg(long)]
        space: Option<PathBuf>,
        #[arg(long)]
        fq: Option<PathBuf>,
        #[arg(long)]
        bundle: Option<PathBuf>,
        /// Also write the DOT text to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::LatticeCheck { .. } => "lattice-check",
            Command::Primes { .. } => "primes",
            Command::Spectrum { .. } => "spectrum",
            Command::Soberify { .. } => "soberify",
            Command::Subspaces { .. } => "subspaces",
            Command::SpecTopology { .. } => "spec-topology",
            Command::BundleBuild { .. } => "bundle-build",
            Command::BundleClassify { .. } => "bundle-classify",
            Command::BundleEnumerate { .. } => "bundle-enumerate",
            Command::MorphismCheck { .. } => "morphism-check",
            Command::LinlocCheck { .. } => "linloc-check",
            Command::Spec { .. } => "spec",
            Command::Omega { .. } => "omega",
            Command::Transpose { .. } => "transpose",
            Command::AdjunctionCensus { .. } => "adjunction-census",
            Command::Dot { .. } => "dot",
        }
    }
}

/// Result fields and verdicts of one command.
#[derive(Default)]
struct Outcome {
    fields: Map<String, Value>,
    verdicts: Vec<Check>,
}

impl Outcome {
    fn set(&mut self, key: &str, v: impl Serialize) {
        self.fields.insert(key.to_string(), serde_json::to_value(v).expect("serializable"));
    }

    fn verdict(&mut self, c: Check) {
        self.verdicts.push(c);
    }
}

pub struct Execution {
    pub code: i32,
    pub report: String,
    /// Extra file outputs requested by flags.
    pub files: Vec<(PathBuf, String)>,
}

/// Parses `argv` (including the program name) and runs the command. `env_cap`
/// is the value of `PFK_CAP`, if set.
pub fn run(argv: &[String], env_cap: Option<&str>) -> Execution {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            return Execution { code, report: e.render().to_string(), files: Vec::new() };
        }
    };
    let caps = match resolve_caps(cli.cap, env_cap) {
        Ok(c) => c,
        Err(e) => return error_report(cli.command.name(), &e, Vec::new()),
    };
    let mut files = Vec::new();
    let result = dispatch(&cli.command, &caps, &mut files);
    let mut exec = match result {
        Ok(outcome) => finish(cli.command.name(), outcome, files),
        Err(e) => error_report(cli.command.name(), &e, files),
    };
    if let Some(out) = cli.out {
        exec.files.push((out, std::mem::take(&mut exec.report)));
    }
    exec
}

fn resolve_caps(flag: Option<u64>, env: Option<&str>) -> Result<Caps> {
    if let Some(c) = flag {
        return Ok(Caps::uniform(c));
    }
    match env {
        None => Ok(Caps::default()),
        Some(s) => s
            .trim()
            .parse::<u64>()
            .map(Caps::uniform)
            .map_err(|_| Error::InvalidInput(vec![format!("PFK_CAP must be a non-negative integer, got `{s}`")])),
    }
}

fn overall(verdicts: &[Check]) -> Status {
    if verdicts.iter().any(Check::failed) {
        Status::Fail
    } else if verdicts.iter().any(|c| c.status == Status::Unverified) {
        Status::Unverified
    } else {
        Status::Pass
    }
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn finish(command: &str, outcome: Outcome, files: Vec<(PathBuf, String)>) -> Execution {
    let status = overall(&outcome.verdicts);
    let mut doc = outcome.fields;
    doc.insert("command".into(), json!(command));
    doc.insert("status".into(), json!(status));
    doc.insert("verdicts".into(), json!(outcome.verdicts));
    let code = if status == Status::Pass { 0 } else { 1 };
    Execution { code, report: render(&Value::Object(doc)), files }
}

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidInput(_)
            | Error::UnknownElement(_)
            | Error::DuplicateId(_)
            | Error::DimensionMismatch { .. }
            | Error::Mismatch(_)
            | Error::OutOfRange(_)
            | Error::NotPrime(_)
            | Error::NotAntisymmetric(..)
    )
}

/// A domain error as a failed (or unverified) verdict with its witness.
pub fn error_verdict(e: &Error) -> Check {
    let (name, witness): (&str, Vec<String>) = match e {
        Error::NotALattice(_) => ("lattice", Vec::new()),
        Error::NotAFrame(_) => ("frame", Vec::new()),
        Error::NotJoinPreserving(w) => ("join preserving", w.clone()),
        Error::NotMeetPreserving(w) => ("meet preserving", w.clone()),
        Error::NotLocaleHomomorphism(_) => ("locale homomorphism", Vec::new()),
        Error::NotSurjective(p) => ("surjective", vec![p.clone()]),
        Error::NotOpenMap(w) => ("open map", w.clone()),
        Error::NotContinuous(w) => ("continuous", w.clone()),
        Error::KernelNotContinuous { point, open } => {
            ("kernel continuous", std::iter::once(point.clone()).chain(open.iter().cloned()).collect())
        }
        Error::QuotientNotOpen(w) => ("quotient open", w.clone()),
        Error::UnsupportedCarrier(_) => ("carrier supported", Vec::new()),
        Error::LaxLawViolated { a, y } => ("lax law", vec![a.clone(), y.clone()]),
        Error::LaxCommutationViolated(v) => ("lax commutation", vec![v.clone()]),
        Error::SpectralKernelNotContinuous(w) => ("spectral kernel continuous", w.clone()),
        Error::NotSpectral(_) => ("spectral", Vec::new()),
        Error::NotAnInterval(a, b) => ("interval", vec![a.clone(), b.clone()]),
        Error::CriterionDisagreement(_) => ("criteria agree", Vec::new()),
        Error::Invariant(_) => ("internal invariant", Vec::new()),
        Error::CapExceeded { what, .. } => return Check::unverified(what.clone(), e.to_string()),
        _ => ("input", Vec::new()),
    };
    Check::fail(name, witness).with_note(e.to_string())
}

fn error_report(command: &str, e: &Error, files: Vec<(PathBuf, String)>) -> Execution {
    if is_input_error(e) {
        let messages = match e {
            Error::InvalidInput(list) => list.clone(),
            other => vec![other.to_string()],
        };
        let doc = json!({"command": command, "status": "invalid-input", "errors": messages});
        return Execution { code: 2, report: render(&doc), files };
    }
    let mut outcome = Outcome::default();
    outcome.verdict(error_verdict(e));
    finish(command, outcome, files)
}

fn read(path: &Path) -> Result<Value> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(vec![format!("{}: {e}", path.display())]))?;
    parse_json(&text).map_err(|e| match e {
        Error::InvalidInput(list) => {
            Error::InvalidInput(list.into_iter().map(|m| format!("{}: {m}", path.display())).collect())
        }
        other => other,
    })
}

fn input(o: &mut Outcome, key: &str, path: &Path) {
    let inputs = o.fields.entry("inputs").or_insert_with(|| json!({}));
    inputs.as_object_mut().expect("object").insert(key.to_string(), json!(path.display().to_string()));
}

fn notes(o: &mut Outcome, list: Vec<String>) {
    if !list.is_empty() {
        o.set("loader_notes", list);
    }
}

fn set_labels(space: &FinSpace, sets: &[crate::bits::PointSet]) -> Vec<Vec<String>> {
    sets.iter().map(|u| u.labels(space.labels())).collect()
}

fn kappa_object(b: &QVBundle) -> BTreeMap<String, String> {
    b.base().points().map(|x| (b.base().label(x).to_string(), b.kernel.kappa_key(x))).collect()
}

fn pairs_object(pairs: Vec<(String, String)>) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k, json!(v))).collect()
}

fn dispatch(cmd: &Command, caps: &Caps, files: &mut Vec<(PathBuf, String)>) -> Result<Outcome> {
    let mut o = Outcome::default();
    match cmd {
        Command::LatticeCheck { lattice, level } => {
            input(&mut o, "lattice", lattice);
            let level: Level = level.parse()?;
            let (raw, _) = load_order(&read(lattice)?)?;
            let report = validate_lattice(&raw, level, caps)?;
            o.set("level", format!("{level:?}").to_lowercase());
            o.set("elements", raw.elements.len());
            o.set("closure", report.closure);
            o.verdicts = report.checks;
        }
        Command::Primes { lattice } => {
            input(&mut o, "lattice", lattice);
            let (l, report) = load_lattice(&read(lattice)?, caps)?;
            o.set("closure", report.closure);
            o.set("primes", l.names(&primes(&l)));
        }
        Command::Spectrum { lattice } => {
            input(&mut o, "lattice", lattice);
            let locale = load_locale(&read(lattice)?, caps)?;
            notes(&mut o, locale.notes);
            let s = spatialization(&locale.value, caps)?;
            let summary = spectrum_summary(&s.spectrum, caps)?;
            o.set("primes", &summary.primes);
            o.set("opens", &summary.opens);
            o.set("spatial", s.is_spatial);
            o.verdict(Check::from_bool("spatial", s.is_spatial));
        }
        Command::Soberify { space } => {
            input(&mut o, "space", space);
            let loaded = load_space(&read(space)?, caps)?;
            notes(&mut o, loaded.notes);
            let x = Arc::new(loaded.value);
            let sep = separation_report(&x, caps)?;
            let sob = soberify(x.clone(), caps)?;
            let table: BTreeMap<String, String> = x
                .points()
                .map(|p| (x.label(p).to_string(), sob.spectrum.space.label(sob.map.apply(p)).to_string()))
                .collect();
            o.set("separation", &sep);
            o.set("spectrum_points", sob.spectrum.space.labels());
            o.set("sob", table);
            o.set("injective", sob.injective);
            o.set("surjective", sob.surjective);
            o.set("homeomorphism", sob.is_bijective());
            o.verdict(Check::from_bool("sober iff sob bijective", sep.sober == sob.is_bijective()));
        }
        Command::Subspaces { fq } => {
            input(&mut o, "fq", fq);
            let fq = load_fq(&read(fq)?, caps)?;
            let sub = SubLattice::new(fq.q, fq.dim, caps)?;
            let mut by_dim = vec![0usize; fq.dim + 1];
            for s in &sub.subspaces {
                by_dim[s.dim()] += 1;
            }
            let expected: Vec<u128> = (0..=fq.dim).map(|k| gaussian_binomial(fq.q as u128, fq.dim, k)).collect();
            o.set("q", fq.q);
            o.set("dim", fq.dim);
            o.set("count", sub.len());
            o.set("by_dimension", &by_dim);
            o.set("subspaces", (0..sub.len()).map(|i| sub.key(i)).collect::<Vec<_>>());
            let ok = by_dim.iter().zip(&expected).all(|(&a, &b)| a as u128 == b);
            o.verdict(Check::from_bool("Gaussian binomial counts", ok));
        }
        Command::SpecTopology { fq, topology } => {
            input(&mut o, "fq", fq);
            let kind: Kind = topology.parse()?;
            let fq = load_fq(&read(fq)?, caps)?;
            let sub = Arc::new(SubLattice::new(fq.q, fq.dim, caps)?);
            let t = spectrum_topology(&fq, sub.clone(), kind, caps)?;
            let nbhds: BTreeMap<String, Vec<String>> =
                (0..sub.len()).map(|v| (sub.key(v), t.space.nbhd(v).labels(t.space.labels()))).collect();
            o.set("topology", kind.to_string());
            o.set("points", sub.len());
            o.set("minimal_opens", nbhds);
            match t.space.opens(caps) {
                Ok(opens) => o.set("open_count", opens.len()),
                Err(e) => o.verdict(error_verdict(&e)),
            }
            let others: BTreeMap<String, Value> = [Kind::Vietoris, Kind::OpenSupport, Kind::Fell]
                .into_iter()
                .filter(|&k| k != kind)
                .map(|k| {
                    let other = spectrum_topology(&fq, sub.clone(), k, caps)?;
                    Ok((k.to_string(), serde_json::to_value(topology_compare(&t.space, &other.space)?).expect("json")))
                })
                .collect::<Result<_>>()?;
            o.set("compared_with", others);
            o.verdict(refinement_chain(&fq, sub, caps)?);
        }
        Command::BundleBuild { bundle } => {
            input(&mut o, "bundle", bundle);
            let loaded = load_bundle(&read(bundle)?, caps)?;
            notes(&mut o, loaded.notes);
            let b = loaded.value;
            o.set("kappa", kappa_object(&b));
            o.set("total_points", b.total.labels());
            o.set("total_opens", set_labels(&b.total, b.total.nbhds()));
            o.set("linear_ops", &b.linear_ops);
            o.verdict(Check::pass("kernel continuous"));
            o.verdict(Check::pass("quotient open"));
            o.verdict(Check::pass("projection continuous and open"));
        }
        Command::BundleClassify { bundle } => {
            input(&mut o, "bundle", bundle);
            let loaded = load_bundle(&read(bundle)?, caps)?;
            notes(&mut o, loaded.notes);
            let b = loaded.value;
            let c = classify(&b, caps)?;
            let sg = b.kernel.verify_sigma_gamma()?;
            o.set("kappa", kappa_object(&b));
            o.set("open_support", c.open_support);
            o.set("criteria", &c.criteria);
            o.set(
                "spectral_kernel",
                pairs_object(
                    b.kernel
                        .spectral_kernel()
                        .iter()
                        .enumerate()
                        .map(|(p, &v)| (b.kernel.base.sob.spectrum.space.label(p).to_string(), b.carrier().sub.key(v)))
                        .collect(),
                ),
            );
            o.set("spectral_kernel_continuous", c.spectral_kernel_continuous);
            o.set("spectral", c.spectral);
            o.set("sober", c.sober);
            o.set("sigma_gamma", &sg);
            o.set("radical", radical_and_sections(&b));
            o.verdicts = c.checks;
        }
        Command::BundleEnumerate { space, fq, filter } => {
            input(&mut o, "space", space);
            input(&mut o, "fq", fq);
            let filter: Filter = filter.parse()?;
            let x = load_space(&read(space)?, caps)?;
            notes(&mut o, x.notes);
            let carrier = Arc::new(Carrier::new(load_fq(&read(fq)?, caps)?, caps)?);
            let base = Base::new(Arc::new(x.value), caps)?;
            let maps = enumerate_kernel_maps(base.clone(), carrier.clone(), filter, caps)?;
            let listed: Vec<BTreeMap<String, String>> = maps
                .iter()
                .map(|k| {
                    base.space.points().map(|p| (base.space.label(p).to_string(), carrier.sub.key(k[p]))).collect()
                })
                .collect();
            o.set("filter", filter.to_string());
            o.set("count", maps.len());
            o.set("kernel_maps", listed);
        }
        Command::MorphismCheck { source, target, morphism } => {
            input(&mut o, "source", source);
            input(&mut o, "target", target);
            input(&mut o, "morphism", morphism);
            let src = Arc::new(load_bundle(&read(source)?, caps)?.value);
            let tgt = Arc::new(load_bundle(&read(target)?, caps)?.value);
            let (flat, star) = load_bundle_morphism(&read(morphism)?, &src, &tgt)?;
            let m = check_morphism(src, tgt, flat, star)?;
            o.set("strict", m.strict);
            if let Some((a, y)) = &m.strict_witness {
                o.set("strict_witness", json!({"a": a, "y": y}));
            }
            o.set("sections", section_map(&m));
            o.verdict(Check::pass("lax law"));
            o.verdicts.extend(m.checks.iter().cloned());
            o.verdict(section_map(&m).commutes);
        }
        Command::LinlocCheck { linloc } => {
            input(&mut o, "linloc", linloc);
            let loaded = load_linloc(&read(linloc)?, caps)?;
            notes(&mut o, loaded.notes);
            let lin = loaded.value;
            linloc_fields(&mut o, &lin);
            o.verdict(Check::pass("join preserving"));
            o.verdict(Check::pass("spectral kernel continuous"));
            match max_variant_check(&lin) {
                Ok(m) => {
                    o.set("max_linearized", m.is_max_linearized);
                    o.verdict(m.comparable_primes);
                }
                Err(Error::UnsupportedCarrier(msg)) => o.set("max_linearized", format!("unsupported: {msg}")),
                Err(e) => return Err(e),
            }
        }
        Command::Spec { linloc } => {
            input(&mut o, "linloc", linloc);
            let loaded = load_linloc(&read(linloc)?, caps)?;
            notes(&mut o, loaded.notes);
            let lin = Arc::new(loaded.value);
            let s = spec_bundle(&lin, caps)?;
            let b = &s.bundle;
            o.set("base_points", b.base().labels());
            o.set("base_opens", set_labels(b.base(), &b.base().opens(caps)?));
            o.set("kappa", kappa_object(b));
            o.set("total_points", b.total.labels());
            o.set("spectral", s.classification.spectral);
            o.set("sober", s.classification.sober);
            let counit = counit_spat(lin, caps)?;
            o.set("counit_iso", counit.iso);
            o.verdict(Check::from_bool("spectral and sober", s.classification.spectral && s.classification.sober));
            o.verdict(s.support_identity.clone());
            o.verdict(counit.sigma_identity);
            o.verdicts.extend(s.classification.checks.iter().cloned());
        }
        Command::Omega { bundle } => {
            input(&mut o, "bundle", bundle);
            let loaded = load_bundle(&read(bundle)?, caps)?;
            notes(&mut o, loaded.notes);
            let b = Arc::new(loaded.value);
            let lin = omega_linloc(&b, caps)?;
            linloc_fields(&mut o, &lin);
            let unit = unit_sob(b.clone(), caps)?;
            o.set("unit_iso", unit.iso);
            o.verdict(Check::from_bool("unit strict", unit.morphism.strict));
            o.verdict(Check::from_bool("unit iso iff sober", unit.iso == b.kernel.base.is_sober()));
            o.verdict(triangle_omega(b, caps)?);
        }
        Command::Transpose { bundle, linloc, morphism } => {
            input(&mut o, "bundle", bundle);
            input(&mut o, "linloc", linloc);
            input(&mut o, "morphism", morphism);
            let a = Arc::new(load_bundle(&read(bundle)?, caps)?.value);
            let lin = Arc::new(load_linloc(&read(linloc)?, caps)?.value);
            let spec = spec_bundle(&lin, caps)?;
            let (flat, star) = load_bundle_morphism(&read(morphism)?, &a, &spec.bundle)?;
            let f = check_morphism(a, spec.bundle.clone(), flat, star)?;
            let t = adjunction_transpose(&f, lin.clone(), caps)?;
            let m = &t.morphism;
            let inv = m.inverse_image();
            o.set(
                "inverse_image",
                pairs_object(
                    inv.source
                        .elements()
                        .map(|d| (inv.source.label(d).to_string(), inv.target.label(inv.apply(d)).to_string()))
                        .collect(),
                ),
            );
            o.set("overline", m.overline.row_strings());
            o.set("strict", m.strict);
            o.verdict(t.round_trip);
            o.verdict(t.uniqueness);
            o.verdict(t.strict_preserved);
        }
        Command::AdjunctionCensus { bundle, linloc } => {
            input(&mut o, "bundle", bundle);
            input(&mut o, "linloc", linloc);
            let a = Arc::new(load_bundle(&read(bundle)?, caps)?.value);
            let lin = Arc::new(load_linloc(&read(linloc)?, caps)?.value);
            let census = hom_census(a.clone(), lin.clone(), caps)?;
            o.set("census", &census);
            o.verdict(census.bijection.clone());
            o.verdict(census.strict_bijection.clone());
            o.verdict(triangle_spec(lin, caps)?);
            o.verdict(triangle_omega(a, caps)?);
        }
        Command::Dot { lattice, space, fq, bundle, dot } => {
            let text = if let Some(p) = lattice {
                input(&mut o, "lattice", p);
                lattice_dot(&load_lattice(&read(p)?, caps)?.0)
            } else if let Some(p) = space {
                input(&mut o, "space", p);
                space_dot(&load_space(&read(p)?, caps)?.value)
            } else if let Some(p) = fq {
                input(&mut o, "fq", p);
                let fq = load_fq(&read(p)?, caps)?;
                lattice_dot(&SubLattice::new(fq.q, fq.dim, caps)?.lattice)
            } else if let Some(p) = bundle {
                input(&mut o, "bundle", p);
                bundle_dot(&load_bundle(&read(p)?, caps)?.value)
            } else {
                unreachable!("clap requires one object")
            };
            o.set("nodes", node_count(&text));
            o.set("edges", edge_count(&text));
            if let Some(path) = dot {
                files.push((path.clone(), text.clone()));
            }
            o.set("dot", text);
        }
    }
    Ok(o)
}

fn linloc_fields(o: &mut Outcome, lin: &LinLocale) {
    o.set("frame", lin.lattice().labels());
    o.set("sigma", pairs_object(lin.sigma_labels()));
    o.set("gamma", pairs_object(lin.gamma_labels()));
    o.set("spectral_kernel", pairs_object(lin.kernel_labels()));
}

/// Number of `k`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(q: u128, n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}
