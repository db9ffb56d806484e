use std::path::Path;

use ladders_core::carriers::{
    admissible_assignments, counting_check, distinctness_check, least_assignment, neg_monotone_obstruction,
    primes_up_to, relation_verdict, stable_subsequence, CarrierError, DistinctnessVerdict, LadderRef,
    ObstructionVerdict, OrbitTable, RelationVerdict, Scenario,
};
use ladders_core::ladders::{
    admissible_pairs, build_ladder, case_ii_ladder, case_ii_parameters, search_decompositions, verify_decomposition,
    Decomposition, DecompositionSpec, Ladder, LadderArtifact, LadderError,
};
use ladders_core::models::{self, augmented_report, theorem_consistency_report, Model, ModelSpec};
use ladders_core::qalgebra::{Field, QuantumClass};
use ladders_core::rings::{RingPresentation, RingSpec};
use ladders_core::spectra::{self, CappedOrbit, MonotoneData};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::input::{self, json_arg, rational_arg, rational_list, read_json, u32_list, write_json, InputError, Result};
use crate::output::{cell, Outcome, Status, Table};
use crate::{CarriersCmd, Cli, Command, LaddersCmd, ModelOut, ModelsCmd, MonotoneArgs, RingCmd, ScenarioArgs, SpectraCmd};

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Ring(c) => ring(c, cli.field),
        Command::Ladders(c) => ladders(c, cli.field),
        Command::Spectra(c) => spectra_cmd(c),
        Command::Models(c) => models_cmd(c, cli.field),
        Command::Carriers(c) => carriers_cmd(c, cli.field),
    }
}

fn err(e: impl std::fmt::Display) -> InputError {
    InputError(e.to_string())
}

fn load_ring(path: &Path, field: Option<Field>) -> Result<RingPresentation> {
    let spec: RingSpec = read_json(path)?;
    RingPresentation::from_spec(&spec, field).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn class(ring: &RingPresentation, text: &str, flag: &str) -> Result<QuantumClass> {
    ring.parse_class(text).map_err(|e| InputError(format!("{flag}: {e}")))
}

fn degree(c: &QuantumClass) -> Value {
    c.degree().map_or(Value::Null, Value::from)
}

fn ring(cmd: &RingCmd, field: Option<Field>) -> Result<Outcome> {
    match cmd {
        RingCmd::Mul { ring, a, b } => {
            let r = load_ring(ring, field)?;
            let (x, y) = (class(&r, a, "--a")?, class(&r, b, "--b")?);
            let p = r.quantum_product(&x, &y).map_err(err)?;
            Ok(Outcome::ok(
                json!({"ring": r.to_string(), "a": x.to_string(), "b": y.to_string(), "product": p.to_string(), "degree": degree(&p)}),
                Table::single("product", p.to_string()),
            ))
        }
        RingCmd::Power { ring, class: c, d } => {
            let r = load_ring(ring, field)?;
            let x = class(&r, c, "--class")?;
            let p = r.power(&x, *d).map_err(err)?;
            Ok(Outcome::ok(
                json!({"ring": r.to_string(), "class": x.to_string(), "d": d, "power": p.to_string(), "degree": degree(&p)}),
                Table::single("power", p.to_string()),
            ))
        }
        RingCmd::Basis { ring, degree: deg } => {
            let r = load_ring(ring, field)?;
            let labels = match deg {
                Some(d) => r.basis(*d),
                None => r.full_basis(),
            };
            let mut t = Table::new(["label", "degree"]);
            let rows: Vec<Value> = labels
                .iter()
                .map(|l| {
                    t.row([l.to_string(), l.degree().to_string()]);
                    json!({"label": l.to_string(), "degree": l.degree()})
                })
                .collect();
            Ok(Outcome::ok(json!({"ring": r.to_string(), "basis": rows}), t))
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T> OneOrMany<T> {
    fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::One(x) => vec![x],
            OneOrMany::Many(v) => v,
        }
    }
}

fn load_decompositions(ring: &RingPresentation, path: &Path) -> Result<Vec<Decomposition>> {
    let specs: OneOrMany<DecompositionSpec> = read_json(path)?;
    specs
        .into_vec()
        .iter()
        .enumerate()
        .map(|(i, s)| Decomposition::from_spec(ring, s).map_err(|e| InputError(format!("{}: entry {i}: {e}", path.display()))))
        .collect()
}

fn ladder_table(l: &Ladder) -> Table {
    let mut t = Table::new(["j", "class", "homology_degree", "step"]);
    for (j, v) in l.window().iter().enumerate() {
        t.row([
            j.to_string(),
            v.to_string(),
            l.homology_degrees()[j].to_string(),
            l.steps()[j].to_string(),
        ]);
    }
    t
}

fn ladders(cmd: &LaddersCmd, field: Option<Field>) -> Result<Outcome> {
    match cmd {
        LaddersCmd::Search { ring, ell_max, nu_max, out } => {
            let r = load_ring(ring, field)?;
            if *ell_max == 0 || *nu_max < 1 {
                return Err(InputError::new("--ell-max and --nu-max must be positive"));
            }
            let found = search_decompositions(&r, *ell_max, *nu_max);
            let specs: Vec<DecompositionSpec> = found.iter().map(Decomposition::to_spec).collect();
            if let Some(p) = out {
                write_json(p, &specs)?;
            }
            let mut t = Table::new(["ell", "nu", "u0", "factors"]);
            for s in &specs {
                t.row([s.factors.len().to_string(), s.nu.to_string(), s.u0.clone(), s.factors.join(", ")]);
            }
            Ok(Outcome::ok(
                json!({"ring": r.to_spec(), "count": specs.len(), "decompositions": specs}),
                t,
            ))
        }
        LaddersCmd::Verify { ring, decomposition } => {
            let r = load_ring(ring, field)?;
            let decs = load_decompositions(&r, decomposition)?;
            let mut all_valid = true;
            let mut t = Table::new(["index", "valid", "ell", "product", "reasons"]);
            let mut reports = Vec::new();
            for (i, d) in decs.iter().enumerate() {
                let rep = verify_decomposition(&r, d).map_err(err)?;
                all_valid &= rep.valid;
                t.row([i.to_string(), rep.valid.to_string(), rep.ell.to_string(), rep.product.clone(), rep.reasons.join("; ")]);
                reports.push(json!({"decomposition": d.to_spec(), "report": rep}));
            }
            let status = if all_valid { Status::Ok } else { Status::Contradiction };
            Ok(Outcome::ok(json!({"valid": all_valid, "reports": reports}), t).with_status(status))
        }
        LaddersCmd::Build { ring, decomposition, index, out } => {
            let r = load_ring(ring, field)?;
            let decs = load_decompositions(&r, decomposition)?;
            let d = decs
                .get(*index)
                .ok_or_else(|| InputError(format!("--index {index}: the file holds {} decompositions", decs.len())))?;
            match build_ladder(&r, d) {
                Ok(l) => {
                    let art = l.to_artifact();
                    if let Some(p) = out {
                        write_json(p, &art)?;
                    }
                    Ok(Outcome::ok(art, ladder_table(&l)))
                }
                Err(e @ (LadderError::Invalid(_) | LadderError::DegenerateChain { .. })) => Ok(Outcome::ok(
                    json!({"built": false, "reason": e.to_string()}),
                    Table::single("reason", e.to_string()),
                )
                .with_status(Status::Contradiction)),
                Err(e) => Err(err(e)),
            }
        }
        LaddersCmd::Case2 { ring, u, orbits, ids, out } => case2(ring, u.as_deref(), *orbits, ids.as_deref(), out.as_deref(), field),
    }
}

fn case2(
    ring: &Path,
    u: Option<&str>,
    orbits: u32,
    ids: Option<&str>,
    out: Option<&Path>,
    field: Option<Field>,
) -> Result<Outcome> {
    let r = load_ring(ring, field)?;
    let u = match u {
        Some(text) => class(&r, text, "--u")?,
        None => r.first_chern_generator(),
    };
    let params = match case_ii_parameters(&r, &u, orbits) {
        Ok(p) => p,
        Err(e @ LadderError::PowerVanishes { .. }) => {
            return Ok(Outcome::ok(
                json!({"u": u.to_string(), "hypothesis_holds": false, "reason": e.to_string()}),
                Table::single("reason", e.to_string()),
            )
            .with_status(Status::Inconclusive))
        }
        Err(e) => return Err(err(e)),
    };
    let mut t = Table::from_fields(&[
        ("u", u.to_string()),
        ("u_degree", params.u_degree.to_string()),
        ("d", params.d.to_string()),
        ("ell", params.ell.to_string()),
    ]);
    let Some(ids) = ids else {
        return Ok(Outcome::ok(json!({"u": u.to_string(), "parameters": params}), t));
    };
    let ids: Vec<String> = ids.split(',').map(|s| s.trim().to_string()).collect();
    if ids.len() != params.d as usize {
        return Err(InputError(format!("--ids: expected {} ids (one per power u^1..u^{}), got {}", params.d, params.d, ids.len())));
    }
    let pairs = admissible_pairs(&ids, &params);
    if pairs.is_empty() {
        let distinct: std::collections::BTreeSet<&String> = ids.iter().collect();
        let reason = format!(
            "no two powers more than 2N/|u| apart share a carrier; {} distinct ids contradict |P| = {orbits}",
            distinct.len()
        );
        return Ok(Outcome::ok(
            json!({"u": u.to_string(), "parameters": params, "pair": null, "reason": reason}),
            Table::single("reason", reason.clone()),
        )
        .with_status(Status::Contradiction));
    }
    let mut tried = Vec::new();
    for (s_minus, s_plus) in pairs {
        match case_ii_ladder(&r, &u, s_minus, s_plus) {
            Ok(l) => {
                let art = l.to_artifact();
                if let Some(p) = out {
                    write_json(p, &art)?;
                }
                t.row(["pair".into(), format!("({s_minus}, {s_plus})")]);
                t.row(["nu".into(), l.nu().to_string()]);
                return Ok(Outcome::ok(
                    json!({"u": u.to_string(), "parameters": params, "pair": [s_minus, s_plus], "skipped": tried, "ladder": art}),
                    t,
                ));
            }
            Err(e @ (LadderError::NonIntegralNu(_) | LadderError::ShortGap(_))) => {
                tried.push(json!({"pair": [s_minus, s_plus], "reason": e.to_string()}));
            }
            Err(e) => return Err(err(e)),
        }
    }
    Ok(Outcome::ok(
        json!({"u": u.to_string(), "parameters": params, "pair": null, "skipped": tried}),
        Table::single("reason", "no admissible pair gives an integral ν".into()),
    )
    .with_status(Status::Inconclusive))
}

fn monotone(args: &MonotoneArgs) -> Result<MonotoneData> {
    MonotoneData::new(args.chern, rational_arg(&args.lambda, "--lambda")?).map_err(|e| InputError(format!("--chern/--lambda: {e}")))
}

fn orbit_table(orbits: &[CappedOrbit]) -> Table {
    let mut t = Table::new(["id", "m", "action", "delta", "cz"]);
    for o in orbits {
        t.row([
            o.id.clone(),
            o.capping.to_string(),
            o.action.to_string(),
            o.mean_index.to_string(),
            o.cz.map(|c| c.to_string()).unwrap_or_default(),
        ]);
    }
    t
}

fn spectra_cmd(cmd: &SpectraCmd) -> Result<Outcome> {
    match cmd {
        SpectraCmd::Recap { orbit, m, monotone: ma } => {
            let o: CappedOrbit = json_arg(orbit, "--orbit")?;
            let r = spectra::recap(&o, *m, &monotone(ma)?);
            let t = orbit_table(std::slice::from_ref(&r));
            Ok(Outcome::ok(r, t))
        }
        SpectraCmd::Iterate { orbit, k } => {
            let o: CappedOrbit = json_arg(orbit, "--orbit")?;
            let r = spectra::iterate(&o, *k).map_err(|e| InputError(format!("--k: {e}")))?;
            let t = orbit_table(std::slice::from_ref(&r));
            Ok(Outcome::ok(r, t))
        }
        SpectraCmd::Augmented { orbits, monotone: ma } => {
            let list: OneOrMany<CappedOrbit> = json_arg(orbits, "--orbits")?;
            let rep = augmented_report(&list.into_vec(), &monotone(ma)?);
            let t = augmented_table(&rep);
            Ok(Outcome::ok(rep, t))
        }
    }
}

fn augmented_table(rep: &models::AugmentedReport) -> Table {
    let mut t = Table::new(["id", "action", "index_term", "augmented"]);
    for e in &rep.entries {
        t.row([e.id.clone(), e.action.clone(), e.index_term.clone(), e.augmented.clone()]);
    }
    t
}

fn load_model(path: &Path) -> Result<Model> {
    let spec: ModelSpec = read_json(path)?;
    Model::from_spec(&spec).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn model_outcome(model: &Model, opts: &ModelOut) -> Result<Outcome> {
    let md = model.monotone_data().map_err(err)?;
    let rep = models::verify_equal_augmented_actions(model).map_err(err)?;
    if let Some(p) = &opts.out {
        write_json(p, &model.to_spec())?;
    }
    if let Some(p) = &opts.table_out {
        write_json(p, &Scenario::from_table(&OrbitTable::from_model(model)))?;
    }
    let points: Vec<Value> = model
        .fixed_points()
        .iter()
        .map(|fp| {
            let mut v = serde_json::to_value(fp).expect("fixed points serialize");
            v["index_gap"] = serde_json::to_value(fp.index_gap()).expect("gap serializes");
            v
        })
        .collect();
    let mut t = Table::new(["id", "action", "delta", "cz", "augmented", "index_gap"]);
    for (p, e) in points.iter().zip(&rep.entries) {
        t.row([
            cell(&p["orbit"]["id"]),
            cell(&p["orbit"]["action"]),
            cell(&p["orbit"]["delta"]),
            cell(&p["orbit"]["cz"]),
            e.augmented.clone(),
            cell(&p["index_gap"]["status"]),
        ]);
    }
    let ok = rep.equal && rep.matches_expected != Some(false);
    let status = if opts.verify && !ok { Status::Contradiction } else { Status::Ok };
    Ok(Outcome::ok(
        json!({
            "model": model.to_spec(),
            "monotone": md,
            "dim": model.dim(),
            "fixed_points": points,
            "augmented": rep,
        }),
        t,
    )
    .with_status(status))
}

fn models_cmd(cmd: &ModelsCmd, field: Option<Field>) -> Result<Outcome> {
    match cmd {
        ModelsCmd::Cpn { lambdas, out } => {
            let model = Model::cpn(rational_list(lambdas, "--lambdas")?).map_err(|e| InputError(format!("--lambdas: {e}")))?;
            model_outcome(&model, out)
        }
        ModelsCmd::Product { models: paths, out } => {
            let factors = paths.iter().map(|p| load_model(p)).collect::<Result<Vec<_>>>()?;
            let model = Model::product(factors).map_err(|e| InputError(format!("--model: {e}")))?;
            model_outcome(&model, out)
        }
        ModelsCmd::Verify { model, ring, decomposition } => {
            let m = load_model(model)?;
            let rep = models::verify_equal_augmented_actions(&m).map_err(err)?;
            let mut t = augmented_table(&rep);
            let mut ok = rep.equal && rep.matches_expected != Some(false);
            let mut result = json!({"model": m.to_spec(), "augmented": rep});
            if let (Some(rp), Some(dp)) = (ring, decomposition) {
                let r = load_ring(rp, field)?;
                let decs = load_decompositions(&r, dp)?;
                let md = m.monotone_data().map_err(err)?;
                let reports: Vec<_> = decs
                    .iter()
                    .map(|d| theorem_consistency_report(&m.orbits(), &md, m.dim(), &r, d))
                    .collect();
                ok &= reports.iter().all(|c| c.pass);
                for (i, c) in reports.iter().enumerate() {
                    t.row([format!("decomposition {i}"), format!("ell = {}", c.ell), format!("shared = {}", c.shared), c.pass.to_string()]);
                }
                result["consistency"] = serde_json::to_value(reports).expect("reports serialize");
            }
            let status = if ok { Status::Ok } else { Status::Contradiction };
            Ok(Outcome::ok(result, t).with_status(status))
        }
    }
}

struct LoadedScenario {
    scenario: Scenario,
    ladder: Option<Ladder>,
    primes: Vec<u32>,
}

fn load_scenario(args: &ScenarioArgs, field: Option<Field>, need_ladder: bool, need_primes: bool) -> Result<LoadedScenario> {
    let scenario: Scenario = read_json(&args.scenario)?;
    let origin = args.scenario.display().to_string();
    let artifact: Option<LadderArtifact> = match (&args.ladder, &scenario.ladder) {
        (Some(p), _) => Some(read_json(p)?),
        (None, Some(LadderRef::Path(rel))) => Some(read_json(&input::relative_to(&args.scenario, rel))?),
        (None, Some(LadderRef::Inline(a))) => Some((**a).clone()),
        (None, None) if need_ladder => return Err(InputError(format!("{origin}: missing key `ladder`"))),
        (None, None) => None,
    };
    let ladder = artifact
        .map(|a| Ladder::from_artifact(&a, field).map_err(|e| InputError(format!("{origin}: key `ladder`: {e}"))))
        .transpose()?;
    let primes = if let Some(list) = &args.primes {
        u32_list(list, "--primes")?
    } else if let Some(b) = args.primes_up_to {
        primes_up_to(b)
    } else {
        scenario.primes.clone()
    };
    if need_primes && primes.is_empty() {
        return Err(InputError(format!("{origin}: missing key `primes`")));
    }
    Ok(LoadedScenario { scenario, ladder, primes })
}

fn table_of(s: &LoadedScenario, origin: &Path) -> Result<OrbitTable> {
    let n = s.ladder.as_ref().map(|l| l.ring().dim());
    s.scenario.table(n).map_err(|e| scenario_error(origin, e))
}

fn scenario_error(origin: &Path, e: CarrierError) -> InputError {
    let key = match &e {
        CarrierError::EmptyTable | CarrierError::DuplicateId(_) => "orbits",
        CarrierError::NoPrimes | CarrierError::NotPrime(_) | CarrierError::NotIncreasing(..) => "primes",
        CarrierError::NotNegativeMonotone(_) => "monotone.lambda",
        CarrierError::Missing(k) => k,
        CarrierError::Mismatch(_) => "monotone",
        _ => "",
    };
    if key.is_empty() {
        InputError(format!("{}: {e}", origin.display()))
    } else {
        InputError(format!("{}: key `{key}`: {e}", origin.display()))
    }
}

fn carriers_cmd(cmd: &CarriersCmd, field: Option<Field>) -> Result<Outcome> {
    match cmd {
        CarriersCmd::Assignments { scenario, k, all } => {
            let origin = scenario.scenario.as_path();
            let s = load_scenario(scenario, field, true, false)?;
            let table = table_of(&s, origin)?;
            let ladder = s.ladder.as_ref().expect("ladder required");
            table.check_ladder(ladder).map_err(|e| scenario_error(origin, e))?;
            if *k == 0 {
                return Err(InputError::new("--k must be positive"));
            }
            let list = if *all {
                admissible_assignments(&table, ladder, *k)
            } else {
                least_assignment(&table, ladder, *k).into_iter().collect()
            };
            let mut t = Table::new(["assignment", "j", "id", "m", "action", "delta"]);
            for (i, a) in list.iter().enumerate() {
                for (j, e) in a.entries.iter().enumerate() {
                    t.row([i.to_string(), j.to_string(), e.id.clone(), e.capping.to_string(), e.action.to_string(), e.mean_index.to_string()]);
                }
            }
            let status = if list.is_empty() { Status::Contradiction } else { Status::Ok };
            Ok(Outcome::ok(json!({"k": k, "count": list.len(), "assignments": list}), t).with_status(status))
        }
        CarriersCmd::Verify { scenario, nondegenerate } => {
            let origin = scenario.scenario.as_path();
            let s = load_scenario(scenario, field, true, true)?;
            let table = table_of(&s, origin)?;
            let ladder = s.ladder.as_ref().expect("ladder required");
            let verdict = relation_verdict(&table, ladder, &s.primes).map_err(|e| scenario_error(origin, e))?;
            let mut t = Table::new(["check", "outcome", "detail"]);
            let mut result = json!({"relation": verdict});
            let status = match &verdict {
                RelationVerdict::Contradiction { witness } => {
                    t.row(["relation".into(), "contradiction".into(), serde_json::to_string(witness).expect("witness")]);
                    Status::Contradiction
                }
                RelationVerdict::Consistent { phi, augmented, residual_bound, .. } => {
                    t.row([
                        "relation".into(),
                        "consistent".into(),
                        format!("image {}; augmented action {augmented}; residual <= {residual_bound}", phi.join(",")),
                    ]);
                    let report = stable_subsequence(&table, ladder, &s.primes).map_err(|e| scenario_error(origin, e))?;
                    let image = report.image();
                    let mut counts = Vec::new();
                    for (i, x) in image.iter().enumerate() {
                        for y in &image[i + 1..] {
                            counts.push(counting_check(&report, x, y).map_err(err)?);
                        }
                    }
                    let first = report.stable_assignments().next().expect("stable primes exist");
                    let flag = *nondegenerate || s.scenario.nondegenerate.unwrap_or(false);
                    let gate = distinctness_check(ladder, first, flag);
                    let status = match &gate {
                        DistinctnessVerdict::Contradiction { .. } => Status::Contradiction,
                        DistinctnessVerdict::Inconclusive { .. } => Status::Inconclusive,
                        _ => Status::Ok,
                    };
                    let gate_json = serde_json::to_value(&gate).expect("gate");
                    t.row(["distinctness".into(), cell(&gate_json["verdict"]), cell(&json!(first.phi().join(",")))]);
                    result["stability"] = json!({
                        "stable_primes": report.stable_primes,
                        "phi": report.phi,
                        "distinct_maps": report.distinct_maps,
                    });
                    result["counts"] = serde_json::to_value(counts).expect("counts");
                    result["distinctness"] = gate_json;
                    status
                }
            };
            Ok(Outcome::ok(result, t).with_status(status))
        }
        CarriersCmd::Negmon { scenario } => {
            let origin = scenario.scenario.as_path();
            let s = load_scenario(scenario, field, false, true)?;
            let table = table_of(&s, origin)?;
            let verdict = neg_monotone_obstruction(&table, &s.primes).map_err(|e| scenario_error(origin, e))?;
            let v = serde_json::to_value(&verdict).expect("verdict");
            let status = match verdict {
                ObstructionVerdict::FiniteOrbitContradiction { .. } | ObstructionVerdict::MissingCarrier { .. } => {
                    Status::Contradiction
                }
                ObstructionVerdict::NoObstruction { .. } => Status::Inconclusive,
            };
            let mut t = Table::new(["outcome", "detail"]);
            let detail = match &v["outcome"].as_str() {
                Some("finite_orbit_contradiction") => format!(
                    "orbit {} at k = {}: {} > {}",
                    cell(&v["orbit"]),
                    cell(&v["witness"]["k"]),
                    cell(&v["witness"]["value"]),
                    cell(&v["bound"])
                ),
                Some("missing_carrier") => format!("k = {}", cell(&v["k"])),
                _ => cell(&v["reason"]),
            };
            t.row([cell(&v["outcome"]), detail]);
            Ok(Outcome::ok(v, t).with_status(status))
        }
    }
}
