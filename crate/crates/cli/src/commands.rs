use pairstab_core::bounds::{
    bound_c, check_section_criteria, mu_from_muhat, simpson_h0_bound, AmbientConstants,
};
use pairstab_core::git::{
    git_explain, git_pairing, git_verdict, polynomial_git_verdict, polynomial_subspace_comparison,
    verify_ratio_substitution, GitPointModel, PolySubspace, WeightVector,
};
use pairstab_core::pair_model::validate;
use pairstab_core::rational::{self, Rational};
use pairstab_core::stability::{
    check_semistable, check_semistable_quotient_form, jordan_holder, jordan_holder_all,
    purity_violations, quotient_comparisons, record_comparisons, Comparison, Verdict,
};
use pairstab_core::systems::{
    self, check_system_semistable, system_to_pair, system_walls, SystemModel,
};
use pairstab_core::walls::{chamber_report, grid_check, DeltaRay};
use pairstab_core::{PairModel, RatPoly};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::input::{check_violations, parse, Failure};

fn relation_name(c: &Comparison) -> &'static str {
    match c.relation() {
        std::cmp::Ordering::Less => "less",
        std::cmp::Ordering::Equal => "equal",
        std::cmp::Ordering::Greater => "greater",
    }
}

fn explain(comparisons: &[Comparison]) -> Value {
    Value::Array(
        comparisons
            .iter()
            .map(|c| {
                json!({
                    "record": c.record,
                    "lhs": c.lhs,
                    "rhs": c.rhs,
                    "relation": relation_name(c),
                })
            })
            .collect(),
    )
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn verdict_value(v: &Verdict) -> Value {
    to_value(v)
}

#[derive(Deserialize)]
struct PairInput {
    model: PairModel,
    delta: RatPoly,
}

fn load_pair(text: &str) -> Result<(PairInput, Vec<String>), Failure> {
    let input: PairInput = parse(text)?;
    let warnings = check_violations("model", validate(&input.model))?;
    Ok((input, warnings))
}

pub fn check(
    text: &str,
    strict: bool,
    quotient: bool,
    explain_flag: bool,
) -> Result<Value, Failure> {
    let (PairInput { model, delta }, warnings) = load_pair(text)?;
    let verdict = if quotient {
        check_semistable_quotient_form(&model, &delta, strict)?
    } else {
        check_semistable(&model, &delta, strict)?
    };
    let mut out = json!({
        "form": if quotient { "quotient" } else { "subobject" },
        "verdict": verdict_value(&verdict),
        "purity_violations": purity_violations(&model, &delta),
        "warnings": warnings,
    });
    if explain_flag {
        let comparisons = if quotient {
            quotient_comparisons(&model, &delta)
        } else {
            record_comparisons(&model, &delta)
        };
        out["explain"] = explain(&comparisons);
    }
    Ok(out)
}

pub fn jh(text: &str, explain_flag: bool) -> Result<Value, Failure> {
    let (PairInput { model, delta }, warnings) = load_pair(text)?;
    let graded = jordan_holder(&model, &delta)?;
    let mut out = json!({
        "graded": graded,
        "total": graded.total(),
        "warnings": warnings,
    });
    if explain_flag {
        out["all_graded"] = to_value(&jordan_holder_all(&model, &delta)?);
    }
    Ok(out)
}

#[derive(Deserialize)]
struct WallsInput {
    model: PairModel,
    ray: DeltaRay,
}

pub fn walls(text: &str, grid: Option<usize>) -> Result<Value, Failure> {
    let input: WallsInput = parse(text)?;
    let warnings = check_violations("model", validate(&input.model))?;
    input
        .ray
        .validate(&input.model)
        .map_err(|e| Failure::input(format!("ray.base: {e}")))?;
    let report = chamber_report(&input.model, &input.ray)?;
    let mut out = json!({ "report": report, "warnings": warnings });
    if let Some(n) = grid {
        let g = grid_check(&input.model, &input.ray, n)?;
        let agrees = g.agrees;
        out["grid_check"] = to_value(&g);
        if !agrees {
            return Err(Failure::Internal(format!(
                "wall computation disagrees with the grid: {}",
                serde_json::to_string(&out["grid_check"]).unwrap_or_default()
            )));
        }
    }
    Ok(out)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolynomialGitInput {
    #[serde(rename = "P")]
    poly: RatPoly,
    delta: RatPoly,
    m: i64,
    subspaces: Vec<PolySubspace>,
}

#[derive(Deserialize)]
struct GitInput {
    #[serde(default)]
    point: Option<GitPointModel>,
    #[serde(default)]
    weights: Vec<WeightVector>,
    #[serde(default)]
    polynomial: Option<PolynomialGitInput>,
}

pub fn git(text: &str, strict: bool, explain_flag: bool) -> Result<Value, Failure> {
    let input: GitInput = parse(text)?;
    let mut out = json!({});
    match (&input.point, &input.polynomial) {
        (None, None) => {
            return Err(Failure::input(
                "expected a \"point\" or a \"polynomial\" section",
            ))
        }
        (Some(_), Some(_)) => {
            return Err(Failure::input(
                "give either \"point\" or \"polynomial\", not both",
            ))
        }
        _ => {}
    }
    if let Some(point) = &input.point {
        let problems = point.validate();
        if !problems.is_empty() {
            return Err(Failure::Input(
                problems
                    .into_iter()
                    .map(|p| format!("point: {p}"))
                    .collect(),
            ));
        }
        let verdict = git_verdict(point, strict)?;
        let pairings = input
            .weights
            .iter()
            .enumerate()
            .map(|(i, w)| {
                git_pairing(point, w)
                    .map(|v| rational::format(&v))
                    .map_err(|e| Failure::input(format!("weights[{i}]: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        out["verdict"] = verdict_value(&verdict);
        out["pairings"] = json!(pairings);
        out["evaluated_at_l"] = json!(point.l);
        if explain_flag {
            out["explain"] = explain(&git_explain(point));
        }
    }
    if let Some(p) = &input.polynomial {
        let verdict = polynomial_git_verdict(&p.poly, &p.delta, p.m, &p.subspaces, strict);
        let identities = p
            .subspaces
            .iter()
            .map(|s| verify_ratio_substitution(&p.poly, &p.delta, p.m, s.dim_u, s.eps, &s.p_fu))
            .collect::<Result<Vec<bool>, _>>()?;
        out["verdict"] = verdict_value(&verdict);
        out["ratio_substitution"] = json!(identities);
        if explain_flag {
            let comparisons: Vec<Comparison> = p
                .subspaces
                .iter()
                .enumerate()
                .map(|(i, s)| polynomial_subspace_comparison(&p.poly, &p.delta, p.m, s, i))
                .collect();
            out["explain"] = explain(&comparisons);
        }
    }
    Ok(out)
}

#[derive(Deserialize)]
struct MuInput {
    #[serde(with = "rational::serde_str")]
    muhat: Rational,
}

#[derive(Deserialize)]
struct BoundCInput {
    #[serde(rename = "mu_P", with = "rational::serde_str")]
    mu_p: Rational,
    #[serde(with = "rational::serde_str")]
    r: Rational,
}

#[derive(Deserialize)]
struct SimpsonInput {
    r: u32,
    d: u32,
    #[serde(with = "rational::serde_str")]
    muhat_max: Rational,
    #[serde(with = "rational::serde_str")]
    muhat: Rational,
    #[serde(with = "rational::serde_str")]
    m: Rational,
}

#[derive(Deserialize)]
struct SectionsInput {
    model: PairModel,
    delta: RatPoly,
    m: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundsInput {
    #[serde(default)]
    constants: Option<AmbientConstants>,
    #[serde(default)]
    mu_from_muhat: Option<MuInput>,
    #[serde(default)]
    bound_c: Option<BoundCInput>,
    #[serde(default)]
    simpson: Option<SimpsonInput>,
    #[serde(default)]
    sections: Option<SectionsInput>,
}

pub fn bounds(text: &str, strict: bool) -> Result<Value, Failure> {
    let input: BoundsInput = parse(text)?;
    let need_constants = || {
        input
            .constants
            .as_ref()
            .ok_or_else(|| Failure::input("constants: required for mu_from_muhat and bound_c"))
            .and_then(|c| {
                c.validate()
                    .map_err(|e| Failure::input(format!("constants: {e}")))?;
                Ok(c)
            })
    };
    let mut out = json!({});
    if let Some(mu) = &input.mu_from_muhat {
        out["mu_from_muhat"] = json!(rational::format(&mu_from_muhat(
            &mu.muhat,
            need_constants()?
        )));
    }
    if let Some(b) = &input.bound_c {
        let v = bound_c(&b.mu_p, &b.r, need_constants()?)?;
        out["bound_c"] = json!(rational::format(&v));
    }
    if let Some(s) = &input.simpson {
        let v = simpson_h0_bound(s.r, s.d, &s.muhat_max, &s.muhat, &s.m)?;
        out["simpson_h0_bound"] = json!(rational::format(&v));
    }
    if let Some(s) = &input.sections {
        check_violations("sections.model", validate(&s.model))?;
        out["sections"] = to_value(&check_section_criteria(&s.model, &s.delta, s.m, strict)?);
    }
    if out.as_object().is_some_and(|o| o.is_empty()) {
        return Err(Failure::input("no bounds section given"));
    }
    Ok(out)
}

#[derive(Deserialize)]
struct SystemInput {
    model: SystemModel,
    alpha: RatPoly,
}

fn load_system(text: &str) -> Result<(SystemInput, Vec<String>), Failure> {
    let input: SystemInput = parse(text)?;
    let warnings = check_violations("model", systems::validate(&input.model))?;
    Ok((input, warnings))
}

pub fn systems_check(text: &str, strict: bool) -> Result<Value, Failure> {
    let (SystemInput { model, alpha }, warnings) = load_system(text)?;
    let verdict = check_system_semistable(&model, &alpha, strict)?;
    Ok(json!({ "verdict": verdict, "warnings": warnings }))
}

pub fn systems_to_pair(text: &str, strict: bool) -> Result<Value, Failure> {
    let (SystemInput { model, alpha }, warnings) = load_system(text)?;
    let (pair, delta) = system_to_pair(&model, &alpha);
    let verdict = check_semistable(&pair, &delta, strict)?;
    Ok(json!({ "model": pair, "delta": delta, "verdict": verdict, "warnings": warnings }))
}

pub fn systems_walls(text: &str) -> Result<Value, Failure> {
    let (SystemInput { model, alpha }, warnings) = load_system(text)?;
    let report = system_walls(&model, &alpha)?;
    Ok(json!({ "report": report, "warnings": warnings }))
}
