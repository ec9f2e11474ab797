use homalg::chaincx::{homology, is_cofibration, is_fibration, is_weak_equivalence, p_homology, ChainComplex, ChainMap};
use homalg::derived::{ext, ext_comparison, p_resolution};
use homalg::model::{
    check_rlp_characterization, factor_acyclic_cof_then_fib, factor_cof_then_acyclic_fib, Factorization,
    GeneratingMap,
};
use homalg::projclass::{class_by_name, ProjectiveClass};
use homalg::{FpModule, Ring};
use serde_json::{json, Value};

use crate::axioms::run_suite;
use crate::parse::{parse_complex, parse_components, parse_module, parse_ring, render_complex, render_module, ParseError};
use crate::report::{render_map, shape_json, Certificates, Outcome};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Library(#[from] homalg::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(homalg::Error::StageBoundExceeded { .. }) => 2,
            _ => 1,
        }
    }
}

/// Settings shared by every command.
#[derive(Clone, Debug)]
pub struct Context {
    pub ring: Ring,
    pub class: ProjectiveClass,
    pub stage_bound: usize,
    pub torsion_bound: u64,
}

impl Context {
    pub fn new(ring: &str, class: &str, stage_bound: usize, torsion_bound: u64) -> Result<Context, CliError> {
        let ring = parse_ring(ring)?;
        let class = class_by_name(class, &ring, torsion_bound)
            .ok_or_else(|| CliError::Usage(format!("unknown class '{class}' (expected categorical or pure)")))?;
        Ok(Context {
            ring,
            class,
            stage_bound,
            torsion_bound,
        })
    }

    fn inputs(&self, mut extra: Value) -> Value {
        extra["ring"] = json!(self.ring.to_string());
        extra["class"] = json!(self.class.name());
        extra
    }

    fn module(&self, text: &str) -> Result<FpModule, CliError> {
        Ok(parse_module(text, &self.ring)?)
    }

    fn complex(&self, text: &str) -> Result<ChainComplex, CliError> {
        Ok(parse_complex(text, &self.ring)?)
    }

    fn map(&self, source: &str, target: &str, map: &str) -> Result<ChainMap, CliError> {
        let x = self.complex(source)?;
        let y = self.complex(target)?;
        let comps = parse_components(map, &self.ring, &x, &y)?;
        Ok(ChainMap::new(&x, &y, comps)?)
    }
}

fn outcome(inputs: Value, result: Value, certificates: Certificates, text: Vec<String>) -> Outcome {
    Outcome {
        inputs,
        result,
        certificates,
        text,
        success: true,
    }
}

pub fn ext_cmd(ctx: &Context, from: &str, to: &str, degree: usize) -> Result<Outcome, CliError> {
    let a = ctx.module(from)?;
    let b = ctx.module(to)?;
    let e = ext(&ctx.class, &a, &b, degree)?;
    let inputs = ctx.inputs(json!({ "from": render_module(&a), "to": render_module(&b), "degree": degree }));
    let certificates = Certificates {
        window: Some((0, e.resolution.length as i64)),
        stages: None,
    };
    let mut result = shape_json(&e.shape);
    result["window_certified"] = json!(e.window_certified);
    Ok(outcome(inputs, result, certificates, vec![e.shape.to_string()]))
}

pub fn resolve_cmd(ctx: &Context, module: &str, length: usize) -> Result<Outcome, CliError> {
    let a = ctx.module(module)?;
    let res = p_resolution(&ctx.class, &a, length)?;
    let inputs = ctx.inputs(json!({ "module": render_module(&a), "length": length }));
    let mut text = Vec::new();
    let mut terms = Vec::new();
    for k in 0..=res.length {
        let p = res.module(k);
        text.push(format!("P{k} = {}", p.shape()));
        terms.push(json!({ "degree": k, "module": render_module(&p), "shape": shape_json(&p.shape()) }));
    }
    let verified = res.verify();
    text.push(format!("complete: {}", res.exact));
    text.push(format!("verified: {verified}"));
    let result = json!({
        "complex": render_complex(&res.complex),
        "augmentation": crate::parse::MatrixText(res.augmentation.matrix()).to_string(),
        "terms": terms,
        "complete": res.exact,
        "verified": verified,
    });
    let certificates = Certificates {
        window: Some((0, res.length as i64)),
        stages: None,
    };
    Ok(outcome(inputs, result, certificates, text))
}

pub fn homology_cmd(ctx: &Context, complex: &str, degree: Option<i64>, test: Option<&str>) -> Result<Outcome, CliError> {
    let x = ctx.complex(complex)?;
    let p = test.map(|t| ctx.module(t)).transpose()?;
    let degrees: Vec<i64> = match (degree, x.support()) {
        (Some(n), _) => vec![n],
        (None, Some((lo, hi))) => (lo..=hi).collect(),
        (None, None) => Vec::new(),
    };
    let mut text = Vec::new();
    let mut groups = Vec::new();
    for n in degrees.iter().copied() {
        let h = match &p {
            Some(p) => p_homology(p, &x, n),
            None => homology(&x, n),
        };
        text.push(format!("H{n} = {h}"));
        let mut g = shape_json(&h);
        g["degree"] = json!(n);
        groups.push(g);
    }
    if text.is_empty() {
        text.push("0".into());
    }
    let mut inputs = json!({ "complex": render_complex(&x), "degree": degree });
    if let Some(p) = &p {
        inputs["test"] = json!(render_module(p));
    }
    let window = match (degrees.first(), degrees.last()) {
        (Some(&lo), Some(&hi)) => Some((lo, hi)),
        _ => None,
    };
    let certificates = Certificates { window, stages: None };
    Ok(outcome(ctx.inputs(inputs), json!({ "groups": groups }), certificates, text))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Kind {
    /// Cofibration followed by an acyclic fibration.
    CofAcyclic,
    /// Acyclic cofibration followed by a fibration.
    AcyclicFib,
}

pub fn factor_cmd(
    ctx: &Context,
    source: &str,
    target: &str,
    map: &str,
    kind: Kind,
    window: Option<i64>,
) -> Result<Outcome, CliError> {
    let f = ctx.map(source, target, map)?;
    let fac: Factorization = match kind {
        Kind::CofAcyclic => factor_cof_then_acyclic_fib(&ctx.class, &f, window, ctx.stage_bound)?,
        Kind::AcyclicFib => factor_acyclic_cof_then_fib(&ctx.class, &f),
    };
    let composes = fac.right.compose(&fac.left).equals(&f);
    let left_cof = is_cofibration(&ctx.class, &fac.left);
    let right_fib = is_fibration(&ctx.class, &fac.right);
    let (left_we, right_we) = match kind {
        Kind::CofAcyclic => (None, Some(is_weak_equivalence(&ctx.class, &fac.right))),
        Kind::AcyclicFib => (Some(is_weak_equivalence(&ctx.class, &fac.left)), None),
    };
    let kind_name = match kind {
        Kind::CofAcyclic => "cof-acyclic",
        Kind::AcyclicFib => "acyclic-fib",
    };
    let inputs = ctx.inputs(json!({
        "source": render_complex(f.source()),
        "target": render_complex(f.target()),
        "map": render_map(&f),
        "kind": kind_name,
        "window": window,
    }));
    let result = json!({
        "mid": render_complex(&fac.mid),
        "left": render_map(&fac.left),
        "right": render_map(&fac.right),
        "composes": composes,
        "certificate_holds": fac.certificate.holds(),
        "left_cofibration": left_cof,
        "right_fibration": right_fib,
        "left_weak_equivalence": left_we,
        "right_weak_equivalence": right_we,
    });
    let mut text = vec![
        format!("mid: {}", render_complex(&fac.mid)),
        format!("left: {}", render_map(&fac.left)),
        format!("right: {}", render_map(&fac.right)),
        format!("composes: {composes}"),
        format!("certificate: {}", if fac.certificate.holds() { "holds" } else { "fails" }),
    ];
    if let Some((lo, hi)) = fac.certificate.window {
        text.push(format!("certified on degrees {lo}..={hi}"));
    }
    let certificates = Certificates {
        window: fac.certificate.window,
        stages: Some(fac.stages),
    };
    let mut out = outcome(inputs, result, certificates, text);
    out.success = composes && fac.certificate.holds();
    Ok(out)
}

pub fn lift_cmd(ctx: &Context, source: &str, target: &str, map: &str) -> Result<Outcome, CliError> {
    let p = ctx.map(source, target, map)?;
    let report = check_rlp_characterization(&ctx.class, &p)?;
    let inputs = ctx.inputs(json!({
        "source": render_complex(p.source()),
        "target": render_complex(p.target()),
        "map": render_map(&p),
    }));
    let failures: Vec<Value> = report
        .failures
        .iter()
        .map(|f| {
            let test = render_module(&ctx.class.test_set()[f.test_object]);
            let generator = match f.kind {
                GeneratingMap::J => format!("0 -> D^{}({test})", f.degree),
                GeneratingMap::I => format!("S^{}({test}) -> D^{}({test})", f.degree - 1, f.degree),
            };
            json!({ "generator": generator, "degree": f.degree })
        })
        .collect();
    let mut text = vec![
        format!("fibration: {}", report.is_fibration()),
        format!("acyclic fibration: {}", report.is_acyclic_fibration()),
    ];
    for f in &failures {
        text.push(format!("no lift against {}", f["generator"].as_str().unwrap_or_default()));
    }
    let result = json!({
        "rlp_j": report.rlp_j,
        "rlp_i": report.rlp_i,
        "p_surjective": report.p_surjective,
        "p_quasi_isomorphism": report.p_quasi_isomorphism,
        "failures": failures,
    });
    let certificates = Certificates {
        window: report.window,
        stages: None,
    };
    Ok(outcome(inputs, result, certificates, text))
}

pub fn check_axioms_cmd(ctx: &Context, seed: u64, cases: usize) -> Result<Outcome, CliError> {
    let failures = run_suite(&ctx.class, seed, cases, ctx.stage_bound);
    let inputs = ctx.inputs(json!({ "seed": seed, "cases": cases }));
    let mut text = Vec::new();
    if failures.is_empty() {
        text.push(format!("all {cases} cases passed"));
    } else {
        text.push(format!("{} of {cases} cases failed", failures.len()));
        for (i, why) in &failures {
            text.push(format!("case {i}: {why}"));
        }
    }
    let listed: Vec<Value> = failures.iter().map(|(i, why)| json!({ "case": i, "reason": why })).collect();
    let result = json!({ "cases": cases, "passed": cases - failures.len(), "failures": listed });
    let mut out = outcome(inputs, result, Certificates::default(), text);
    out.success = failures.is_empty();
    Ok(out)
}

pub fn compare_cmd(ctx: &Context, from: &str, to: &str, degree: usize) -> Result<Outcome, CliError> {
    let a = ctx.module(from)?;
    let b = ctx.module(to)?;
    let c = ext_comparison(&a, &b, degree, ctx.torsion_bound)?;
    let inputs = json!({
        "ring": ctx.ring.to_string(),
        "from": render_module(&a),
        "to": render_module(&b),
        "degree": degree,
        "torsion_bound": ctx.torsion_bound,
    });
    let result = json!({
        "pure": shape_json(&c.pure.shape),
        "categorical": shape_json(&c.categorical.shape),
        "map": crate::parse::MatrixText(c.map.matrix()).to_string(),
        "map_is_zero": c.map.is_zero(),
    });
    let text = vec![format!("pure: {} | categorical: {}", c.pure.shape, c.categorical.shape)];
    let len = c.pure.resolution.length.min(c.categorical.resolution.length);
    let certificates = Certificates {
        window: Some((0, len as i64)),
        stages: None,
    };
    Ok(outcome(inputs, result, certificates, text))
}
