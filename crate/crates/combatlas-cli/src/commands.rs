use std::fs;

use anyhow::{anyhow, bail, Context, Result};
use combatlas::atlas::{atlas_from_value, check_property_with, validate_atlas_with, verify_local_global_with, Atlas, CheckOptions, Property};
use combatlas::geometry::{
    bm_split_trace, bm_verify, brick_region_from_str, family_atype, mixed_volume, mv_identities, perturb_family, polytope_file_from_str,
    verify_af_with, PerturbOptions, PolytopeFamily, PolytopeFile,
};
use combatlas::linalg::{exact_inertia, parse_rational, Backend, Rational, Scalar, Tolerance};
use combatlas::lorentzian::{hessian, is_lorentzian, polynomial_from_str, verify_hessian_hyp, HomogeneousPolynomial};
use combatlas::matroid::{complex_from_str, matroid_atlas, recognize_matroid, verify_mason, verify_matroid_atlas, Matroid, SimplicialComplex, WeightProfile};
use serde_json::{json, Value};

use crate::report::{Check, Header, Report};

/// Settings shared by every subcommand.
pub struct Config {
    pub eps: f64,
    pub seed: u64,
    pub t_samples: Vec<Rational>,
}

impl Config {
    fn header(&self, command: &str, inputs: &[&str]) -> Header {
        Header {
            command: command.to_string(),
            inputs: inputs.iter().map(|s| s.to_string()).collect(),
            eps: self.eps,
            seed: self.seed,
            t_samples: self.t_samples.iter().map(|t| t.to_string()).collect(),
        }
    }
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {path}"))
}

fn load_complex(path: &str) -> Result<SimplicialComplex> {
    complex_from_str(&read(path)?).with_context(|| path.to_string())
}

fn load_polynomial(path: &str) -> Result<HomogeneousPolynomial> {
    polynomial_from_str(&read(path)?).with_context(|| path.to_string())
}

fn load_polytopes(path: &str) -> Result<PolytopeFile> {
    polytope_file_from_str(&read(path)?).with_context(|| path.to_string())
}

pub fn mason(cfg: &Config, path: &str, k: usize, strong: bool, atlas_route: bool) -> Result<Report> {
    let mat = Matroid::new(load_complex(path)?).with_context(|| format!("{path}: not a matroid"))?;
    let rep = verify_mason(&mat, k, strong)?;
    let mut checks = vec![
        Check::new("direct: I(k)^2 >= factor * I(k-1) I(k+1)", rep.direct_holds).slack(rep.direct_slack.to_string()),
        Check::new("root forms match counts", rep.forms_match),
        Check::new("root matrix has one positive eigenvalue", rep.root_ope).witness(&rep.root_inertia),
        Check::new("atlas: (Hyp) at the root pair", rep.atlas_holds).slack(rep.atlas_slack.to_string()),
        Check::new("routes agree", rep.agree),
    ];
    let mut suite = Value::Null;
    if atlas_route {
        let w = if strong { WeightProfile::strong(mat.ground_size(), k)? } else { WeightProfile::unweighted() };
        let ma = matroid_atlas(&mat, k, &w, &cfg.t_samples)?;
        let s = verify_matroid_atlas(mat.complex(), &ma);
        checks.push(Check::new(format!("atlas suite ({} vertices, {} local-global checks)", s.vertices, s.local_global_checked), s.holds).witness(s.failures.first()));
        suite = serde_json::to_value(&s)?;
    }
    Ok(Report::new(cfg.header("mason", &[path]), checks, json!({ "mason": rep, "atlas_suite": suite })))
}

pub fn recognize(cfg: &Config, path: &str) -> Result<Report> {
    let rep = recognize_matroid(&load_complex(path)?);
    let checks = vec![
        Check::new("exchange property", rep.direct_is_matroid).witness(&rep.exchange_violation),
        Check::new(format!("sink hyperbolicity on {{x, y, z, *}} ({} triples)", rep.triples_checked), rep.atlas_is_matroid).witness(&rep.atlas_witness),
        Check::new("routes agree", rep.agree),
    ];
    Ok(Report::new(cfg.header("recognize", &[path]), checks, &rep))
}

pub fn lorentzian(cfg: &Config, path: &str, witness: bool) -> Result<Report> {
    let f = load_polynomial(path)?;
    let rep = is_lorentzian(&f).with_context(|| path.to_string())?;
    let mut check = Check::new(format!("Lorentzian ({} Hessians checked)", rep.hessians_checked), rep.holds);
    if witness {
        check = check.witness(&rep.witness);
    }
    let checks = vec![Check::info("nonnegative coefficients", rep.nonnegative), Check::info("M-convex support", rep.m_convex), check];
    let mut details = serde_json::to_value(&rep)?;
    if !witness {
        details.as_object_mut().map(|o| o.remove("witness"));
    }
    Ok(Report::new(cfg.header("lorentzian", &[path]), checks, details))
}

pub fn hessian_cmd(cfg: &Config, path: &str, at: &str) -> Result<Report> {
    let f = load_polynomial(path)?;
    let w: Vec<Rational> = at.split(',').map(|s| parse_rational(s.trim()).map_err(|e| anyhow!("--at: {e}"))).collect::<Result<_>>()?;
    if w.len() != f.variables() {
        bail!("--at: expected {} coordinates, found {}", f.variables(), w.len());
    }
    let h = hessian(&f, &w)?;
    let rep = verify_hessian_hyp(&f, &w)?;
    let mut checks = vec![Check::new("Hessian has one positive eigenvalue", rep.direct_ope).witness(exact_inertia(&h))];
    if let Some(a) = &rep.atlas {
        checks.push(Check::new(format!("atlas route ({} vertices)", a.vertices), a.holds).witness(a.failures.first()));
    }
    checks.push(Check::new("routes agree", rep.agree));
    let matrix: Vec<Vec<String>> = h.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    Ok(Report::new(cfg.header("hessian", &[path]), checks, json!({ "at": at, "hessian": matrix, "report": rep })))
}

fn family(cfg: &Config, file: &PolytopeFile, path: &str) -> Result<PolytopeFamily> {
    family_atype(file.normals.clone(), file.bodies.clone(), cfg.eps).with_context(|| format!("{path}: bodies do not form a simple strongly isomorphic family (try --perturb)"))
}

fn names(list: &str) -> Vec<String> {
    list.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

pub fn mixvol(cfg: &Config, path: &str, select: &str) -> Result<Report> {
    let file = load_polytopes(path)?;
    let fam = family(cfg, &file, path)?;
    let sel = names(select);
    let idx: Vec<usize> = sel.iter().map(|n| fam.index(n)).collect::<Result<_, _>>()?;
    let hs: Vec<&[f64]> = idx.iter().map(|&k| fam.support(k)).collect();
    let v = mixed_volume(&fam.atype, &hs)?;
    let mut checks = vec![Check::new("nonnegative", v >= -cfg.eps * v.abs().max(1.0)).slack(v)];
    let mut identities = Value::Null;
    if fam.dim() >= 2 {
        let rep = mv_identities(&fam.atype, hs[0], hs[1], &hs[2..])?;
        checks.push(Check::new("mixed volume matrix identities", rep.holds).slack(rep.form_deviation.max(rep.row_max_deviation)));
        identities = serde_json::to_value(&rep)?;
    }
    Ok(Report::new(cfg.header("mixvol", &[path]), checks, json!({ "select": sel, "mixed_volume": v, "identities": identities })))
}

pub fn af(cfg: &Config, path: &str, a: &str, b: &str, p: Option<&str>, perturb: Option<f64>) -> Result<Report> {
    let file = load_polytopes(path)?;
    let (fam, info) = match perturb {
        Some(eps) => {
            let bodies: Vec<(String, _)> = (0..file.bodies.len()).map(|k| (file.bodies[k].0.clone(), file.system(k))).collect();
            let opts = PerturbOptions { seed: cfg.seed, eps: cfg.eps, ..PerturbOptions::default() };
            let (fam, info) = perturb_family(&bodies, eps, &opts).with_context(|| path.to_string())?;
            (fam, Some(info))
        }
        None => (family(cfg, &file, path)?, None),
    };
    let (ia, ib) = (fam.index(a)?, fam.index(b)?);
    let m = fam.dim();
    let ps: Vec<String> = match p {
        Some(list) => names(list),
        None => fam.names.iter().filter(|n| *n != a && *n != b).take(m.saturating_sub(2)).cloned().collect(),
    };
    if ps.len() + 2 != m {
        bail!("{path}: dimension {m} needs {} further bodies, found {}", m.saturating_sub(2), ps.len());
    }
    let ips: Vec<usize> = ps.iter().map(|n| fam.index(n)).collect::<Result<_, _>>()?;
    let rep = verify_af_with(&fam, ia, ib, &ips, Tolerance::new(cfg.eps))?;
    let mut checks = vec![
        Check::new("direct: V(A,B,P)^2 >= V(A,A,P) V(B,B,P)", rep.direct_holds).slack(rep.slack),
        Check::new("mixed volume matrix has one positive eigenvalue", rep.ope).witness(&rep.inertia),
        Check::new("(Hyp) at (h_B, h_A)", rep.pair_holds),
        Check::new("mixed volume matrix identities", rep.identities.holds).slack(rep.identities.form_deviation.max(rep.identities.row_max_deviation)),
    ];
    if let Some(ndc) = rep.base_ndc {
        checks.push(Check::new("planar NDC with g = h_A", ndc));
    }
    if let Some(atlas) = &rep.atlas {
        checks.push(Check::new(format!("atlas route ({} facet sinks)", atlas.sinks), atlas.holds).witness(atlas.properties.iter().chain([&atlas.local_global]).find(|r| !r.holds)));
    }
    checks.push(Check::new("routes agree", rep.agree));
    Ok(Report::new(cfg.header("af", &[path]), checks, json!({ "A": a, "B": b, "P": ps, "perturbation": info, "report": rep })))
}

pub fn bm(cfg: &Config, path_a: &str, path_b: &str, trace: bool) -> Result<Report> {
    let a = brick_region_from_str(&read(path_a)?).with_context(|| path_a.to_string())?;
    let b = brick_region_from_str(&read(path_b)?).with_context(|| path_b.to_string())?;
    let rep = bm_verify(&a, &b)?;
    let mut checks = vec![Check::new("sqrt area(A+B) >= sqrt area(A) + sqrt area(B)", rep.holds).slack(rep.slack), Check::info("equality", rep.equality)];
    let mut tree = Value::Null;
    if trace {
        let t = bm_split_trace(&a, &b)?;
        checks.push(Check::new(format!("split trace ({} nodes, depth {})", t.nodes(), t.depth()), t.all_hold()));
        tree = serde_json::to_value(&t)?;
    }
    Ok(Report::new(cfg.header("bm", &[path_a, path_b]), checks, json!({ "report": rep, "trace": tree })))
}

/// The tolerance in `opts` applies to the float backend only.
pub fn atlas_verify(cfg: &Config, path: &str, vertex: Option<&str>, all: bool, opts: CheckOptions) -> Result<Report> {
    let value: Value = serde_json::from_str(&read(path)?).map_err(combatlas::io::IoError::from).with_context(|| path.to_string())?;
    let backend = match value.get("backend") {
        Some(b) => serde_json::from_value(b.clone()).with_context(|| format!("{path}: $.backend: expected \"rational\" or \"float\""))?,
        None => Backend::Rational,
    };
    let header = cfg.header("atlas verify", &[path]);
    match backend {
        Backend::Rational => {
            let a = atlas_from_value::<Rational>(&value).with_context(|| path.to_string())?;
            verify_atlas(&a, CheckOptions { tol: Tolerance::default(), ..opts }, vertex, all, header)
        }
        Backend::Float => {
            let a = atlas_from_value::<f64>(&value).with_context(|| path.to_string())?;
            verify_atlas(&a, opts, vertex, all, header)
        }
    }
}

fn verify_atlas<T: Scalar>(a: &Atlas<T>, opts: CheckOptions, vertex: Option<&str>, all: bool, header: Header) -> Result<Report> {
    let valid = validate_atlas_with(a, &opts);
    let mut checks = vec![Check::new("valid atlas", valid.holds).witness(&valid.witness)];
    let targets: Vec<String> = match vertex {
        Some(v) => {
            a.vertex(v)?;
            vec![v.to_string()]
        }
        None if all => a.non_sinks().map(|v| v.id.clone()).collect(),
        None => a.sources().into_iter().map(str::to_string).collect(),
    };
    let mut reports = Vec::new();
    for v in &targets {
        if a.vertex(v)?.is_sink() {
            let r = check_property_with(a, v, Property::Ope, &opts)?;
            checks.push(Check::new(format!("{v}: OPE (sink)"), r.holds).witness(&r.witness));
            continue;
        }
        for prop in Property::LOCAL {
            let r = check_property_with(a, v, prop, &opts)?;
            checks.push(Check::info(format!("{v}: {prop}"), r.holds).witness(&r.witness));
        }
        let lg = verify_local_global_with(a, v, &opts)?;
        let s = lg.summary();
        if lg.premises_hold {
            checks.push(Check::new(format!("{v}: local-global"), s.holds).witness(&s.witness));
        } else {
            checks.push(Check::info(format!("{v}: local-global premises"), false).witness(&s.witness));
        }
        let ope = check_property_with(a, v, Property::Ope, &opts)?;
        checks.push(Check::new(format!("{v}: OPE"), ope.holds).witness(&ope.witness));
        reports.push(lg);
    }
    Ok(Report::new(header, checks, json!({ "vertices": targets, "local_global": reports })))
}
