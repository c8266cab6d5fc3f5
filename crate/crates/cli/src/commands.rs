use std::error::Error as StdError;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use fanout_forge::circuit::Circuit;
use fanout_forge::fanout::{build_fanout_from_ghz, verify_fanout, Verdict, VerifyMode};
use fanout_forge::ghz::{
    best_root, depth_table_csv, schedule_ghz, verify_ghz_preparation, GhzPlan,
};
use fanout_forge::pauli::{build_context, Context, TritString};
use fanout_forge::sim::{sample_shots, StateVector, DENSE_CAP_ENV, DENSE_HARD_MAX};
use fanout_forge::states::{
    decode_shot, identify_state, measurement_circuit, parse_shots, prepare_state_circuit,
    GhzClassLabel, Identification,
};
use fanout_forge::topology::{full, grid, heavy_hex_156, line, CouplingGraph};
use serde_json::{json, Value};

use crate::{
    Builtin, CircuitFormat, Command, ContextFormat, ModeChoice, OptionalTopologyArgs, OutputArgs,
    PlanFormat, Role, RootArg, TopologyArgs, VerifyChoice,
};

pub type CliResult<T> = Result<T, Box<dyn StdError>>;

pub enum Status {
    Ok,
    /// A verification or decoding check did not hold.
    Failed,
}

const BIT_ORDER: &str = "qubit 0 is the least significant bit of a basis index and the leftmost character of a bitstring";
const QASM_TAG: &str = "// fanout-forge";

pub fn run(command: Command) -> CliResult<Status> {
    match command {
        Command::Ghz {
            topology,
            root,
            output,
            format,
        } => ghz(&topology, &root, &output, format),
        Command::Fanout {
            topology,
            root,
            output,
            format,
            verify,
        } => fanout(&topology, &root, &output, format, verify),
        Command::DepthTable {
            topology,
            root,
            output,
        } => {
            let graph = topology.build()?;
            let plan = plan_for(&graph, &root)?;
            summarize_plan(&graph, &plan);
            emit(&output, &depth_table_csv(&plan.depth_table()))?;
            Ok(Status::Ok)
        }
        Command::Context {
            n,
            s,
            beta,
            output,
            format,
        } => {
            let ctx = Context::new(n, s, parse_beta(beta.as_deref(), n)?)?;
            let text = match format {
                ContextFormat::Json => ctx.to_json()? + "\n",
                ContextFormat::Text => build_context(&ctx)?
                    .iter()
                    .map(|p| format!("{p}\n"))
                    .collect(),
            };
            emit(&output, &text)?;
            Ok(Status::Ok)
        }
        Command::MeasureSim {
            n,
            alpha,
            s,
            beta,
            shots,
            shots_file,
            seed,
            topology,
            root,
            output,
        } => {
            let alpha = alpha.unwrap_or_else(|| "0".repeat(n));
            let label = GhzClassLabel::parse(&alpha, s, parse_beta(beta.as_deref(), n)?)?;
            measure_sim(
                &label,
                shots,
                shots_file.as_deref(),
                seed,
                &topology,
                &root,
                &output,
            )
        }
        Command::Verify {
            circuit,
            root,
            role,
            mode,
            output,
        } => verify(&circuit, root, role, mode, &output),
    }
}

impl TopologyArgs {
    fn build(&self) -> CliResult<CouplingGraph> {
        graph_from(
            self.source.topology,
            self.source.edges.as_deref(),
            self.n,
            self.dims.as_deref(),
        )
    }
}

fn graph_from(
    builtin: Option<Builtin>,
    edges: Option<&Path>,
    n: Option<usize>,
    dims: Option<&str>,
) -> CliResult<CouplingGraph> {
    if let Some(path) = edges {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        return CouplingGraph::load_edge_list(&text)
            .map_err(|e| format!("{}: {e}", path.display()).into());
    }
    let need_n = || n.ok_or_else(|| "--n is required for this topology".to_string());
    Ok(match builtin.ok_or("no topology given")? {
        Builtin::HeavyHex156 => heavy_hex_156(),
        Builtin::Full => full(need_n()?),
        Builtin::Line => line(need_n()?),
        Builtin::Grid => grid(&parse_dims(dims.ok_or("--dims is required for grid")?)?),
    })
}

fn parse_dims(text: &str) -> CliResult<Vec<usize>> {
    text.split(['x', 'X', ','])
        .map(|d| {
            d.trim()
                .parse::<usize>()
                .ok()
                .filter(|&d| d > 0)
                .ok_or_else(|| format!("bad grid extent {d:?} in {text:?}").into())
        })
        .collect()
}

fn parse_beta(beta: Option<&str>, n: usize) -> CliResult<TritString> {
    match beta {
        Some(text) => Ok(text.parse()?),
        None => Ok(TritString::zeros(n)),
    }
}

fn resolve_root(graph: &CouplingGraph, root: &RootArg) -> CliResult<usize> {
    if root.root == "auto" {
        return Ok(best_root(graph)?.0);
    }
    let r: usize = root
        .root
        .parse()
        .map_err(|_| format!("--root must be an index or `auto`, got {:?}", root.root))?;
    if r >= graph.num_nodes() {
        return Err(format!("root {r} is outside a {}-node graph", graph.num_nodes()).into());
    }
    Ok(r)
}

fn plan_for(graph: &CouplingGraph, root: &RootArg) -> CliResult<GhzPlan> {
    let r = resolve_root(graph, root)?;
    Ok(schedule_ghz(graph, r)?)
}

fn summarize_plan(graph: &CouplingGraph, plan: &GhzPlan) {
    eprintln!(
        "{}: {} qubits, root {}, GHZ depth {}",
        graph.name(),
        plan.num_qubits(),
        plan.root(),
        plan.depth()
    );
}

fn emit(output: &OutputArgs, text: &str) -> CliResult<()> {
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn pretty(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("json values serialize") + "\n"
}

fn tagged_qasm(circuit: &Circuit, role: Role, root: usize) -> String {
    let role = match role {
        Role::Fanout => "fanout",
        Role::Ghz => "ghz",
    };
    format!("{QASM_TAG} role={role} root={root}\n{}", circuit.to_qasm())
}

/// Cap for dense checks: the environment override if set, otherwise the hard
/// maximum when dense mode was asked for by name and the default cap when it
/// was only opportunistic.
fn dense_cap(explicit: bool) -> usize {
    if std::env::var_os(DENSE_CAP_ENV).is_some() || !explicit {
        fanout_forge::sim::default_dense_cap()
    } else {
        DENSE_HARD_MAX
    }
}

fn ghz(
    topology: &TopologyArgs,
    root: &RootArg,
    output: &OutputArgs,
    format: PlanFormat,
) -> CliResult<Status> {
    let graph = topology.build()?;
    let plan = plan_for(&graph, root)?;
    summarize_plan(&graph, &plan);
    let text = match format {
        PlanFormat::Json => {
            let rows: Vec<Value> = plan
                .depth_table()
                .iter()
                .map(|&(layer, size)| json!({"layer": layer, "size": size}))
                .collect();
            pretty(&json!({
                "role": "ghz",
                "topology": graph.name(),
                "n": plan.num_qubits(),
                "root": plan.root(),
                "depth": plan.depth(),
                "growth_table": plan.growth_table(),
                "depth_table": rows,
                "bit_order": BIT_ORDER,
                "circuit": plan.preparation_circuit().to_json_value(),
            }))
        }
        PlanFormat::Qasm => tagged_qasm(&plan.preparation_circuit(), Role::Ghz, plan.root()),
        PlanFormat::Csv => depth_table_csv(&plan.depth_table()),
    };
    emit(output, &text)?;
    Ok(Status::Ok)
}

fn fanout(
    topology: &TopologyArgs,
    root: &RootArg,
    output: &OutputArgs,
    format: CircuitFormat,
    verify: VerifyChoice,
) -> CliResult<Status> {
    let graph = topology.build()?;
    let plan = plan_for(&graph, root)?;
    let fo = build_fanout_from_ghz(&plan);
    let verdict = match verify {
        VerifyChoice::None => None,
        VerifyChoice::Dense => Some(verify_fanout(
            &fo,
            plan.root(),
            VerifyMode::Dense,
            dense_cap(true),
        )?),
        VerifyChoice::Tableau => Some(verify_fanout(&fo, plan.root(), VerifyMode::Tableau, 0)?),
    };
    eprintln!(
        "{}: {} qubits, root {}, GHZ depth {}, fanout depth {}{}",
        graph.name(),
        plan.num_qubits(),
        plan.root(),
        plan.depth(),
        fo.depth(),
        verdict
            .as_ref()
            .map(|v| format!(", {} check {}", mode_name(v.mode), pass_word(v.pass)))
            .unwrap_or_default()
    );
    let text = match format {
        CircuitFormat::Json => pretty(&json!({
            "role": "fanout",
            "topology": graph.name(),
            "n": plan.num_qubits(),
            "root": plan.root(),
            "ghz_depth": plan.depth(),
            "depth": fo.depth(),
            "gate_count": fo.len(),
            "verdict": verdict,
            "circuit": fo.to_json_value(),
        })),
        CircuitFormat::Qasm => tagged_qasm(&fo, Role::Fanout, plan.root()),
    };
    emit(output, &text)?;
    Ok(match verdict {
        Some(v) if !v.pass => Status::Failed,
        _ => Status::Ok,
    })
}

fn mode_name(mode: VerifyMode) -> &'static str {
    match mode {
        VerifyMode::Dense => "dense",
        VerifyMode::Tableau => "tableau",
    }
}

fn pass_word(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

fn measure_sim(
    label: &GhzClassLabel,
    shot_count: usize,
    shots_file: Option<&Path>,
    seed: Option<u64>,
    topology: &OptionalTopologyArgs,
    root: &RootArg,
    output: &OutputArgs,
) -> CliResult<Status> {
    let n = label.num_qubits();
    let graph = if topology.topology.is_none() && topology.edges.is_none() {
        full(n)
    } else {
        graph_from(
            topology.topology,
            topology.edges.as_deref(),
            Some(n),
            topology.dims.as_deref(),
        )?
    };
    if graph.num_nodes() != n {
        return Err(format!(
            "topology has {} nodes but the label has {n} qubits",
            graph.num_nodes()
        )
        .into());
    }
    let plan = plan_for(&graph, root)?;
    let ctx = label.context()?;
    let fo = build_fanout_from_ghz(&plan);
    let mc = measurement_circuit(&ctx, &fo, plan.root())?;

    let (shots, seed) = match shots_file {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            (
                parse_shots(&text).map_err(|e| format!("{}: {e}", path.display()))?,
                None,
            )
        }
        None => {
            let seed = seed.unwrap_or_else(|| {
                let s = rand::random::<u64>();
                eprintln!("seed: {s}");
                s
            });
            let mut sv = StateVector::zero(n)?;
            sv.apply_circuit(&prepare_state_circuit(label, &plan)?)?;
            sv.apply_circuit(mc.circuit())?;
            (sample_shots(&sv, shot_count, seed), Some(seed))
        }
    };
    let decoded = shots
        .iter()
        .map(|b| decode_shot(b, &ctx, &mc))
        .collect::<Result<Vec<_>, _>>()?;
    let identification = identify_state(&decoded)?;

    let (ident_json, ok) = match &identification {
        Identification::Label(found) => {
            // simulated shots must give back the label that was prepared
            let ok = shots_file.is_some() || found == label;
            eprintln!(
                "decoded {} shots: alpha={} s={} beta={}{}",
                decoded.len(),
                found.alpha_string(),
                found.s(),
                found.beta(),
                if ok {
                    ""
                } else {
                    " (differs from the prepared label)"
                }
            );
            (
                json!({
                    "status": "identified",
                    "alpha": found.alpha_string(),
                    "s": found.s(),
                    "beta": found.beta().to_string(),
                }),
                ok,
            )
        }
        Identification::Inconsistent(report) => {
            eprintln!(
                "decoded {} shots: {} observables vary across shots",
                report.shots,
                report.differing.len()
            );
            let differing: Vec<Value> = report
                .differing
                .iter()
                .map(|(o, idx)| json!({"observable": o.to_string(), "first_differing_shot": idx}))
                .collect();
            (
                json!({"status": "inconsistent", "differing": differing}),
                false,
            )
        }
    };
    let doc = json!({
        "n": n,
        "label": {"alpha": label.alpha_string(), "s": label.s(), "beta": label.beta().to_string()},
        "root": plan.root(),
        "seed": seed,
        "fanout_depth": fo.depth(),
        "measurement_depth": mc.circuit().depth(),
        "bit_order": BIT_ORDER,
        "shots": decoded.iter().map(|d| d.to_json_value()).collect::<Vec<_>>(),
        "identification": ident_json,
    });
    emit(output, &pretty(&doc))?;
    Ok(if ok { Status::Ok } else { Status::Failed })
}

/// Circuit plus whatever role/root metadata the file carries.
fn load_circuit(path: &PathBuf) -> CliResult<(Circuit, Option<Role>, Option<usize>)> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let located = |e: fanout_forge::Error| format!("{}: {e}", path.display());
    if text.trim_start().starts_with('{') {
        let value: Value =
            serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        let circuit = Circuit::from_json_value(&value).map_err(located)?;
        let role = match value.get("role").and_then(Value::as_str) {
            Some("fanout") => Some(Role::Fanout),
            Some("ghz") => Some(Role::Ghz),
            _ => None,
        };
        let root = value
            .get("root")
            .and_then(Value::as_u64)
            .map(|r| r as usize);
        return Ok((circuit, role, root));
    }
    let circuit = Circuit::from_qasm(&text).map_err(located)?;
    let mut role = None;
    let mut root = None;
    if let Some(tag) = text.lines().find_map(|l| l.trim().strip_prefix(QASM_TAG)) {
        for field in tag.split_whitespace() {
            match field.split_once('=') {
                Some(("role", "fanout")) => role = Some(Role::Fanout),
                Some(("role", "ghz")) => role = Some(Role::Ghz),
                Some(("root", r)) => root = r.parse().ok(),
                _ => {}
            }
        }
    }
    Ok((circuit, role, root))
}

fn verify(
    path: &PathBuf,
    root_flag: Option<usize>,
    role_flag: Option<Role>,
    mode: ModeChoice,
    output: &OutputArgs,
) -> CliResult<Status> {
    let (circuit, file_role, file_root) = load_circuit(path)?;
    let role = role_flag.or(file_role).unwrap_or(Role::Fanout);
    let n = circuit.num_qubits();
    let modes: Vec<(VerifyMode, usize)> = match mode {
        ModeChoice::Dense => vec![(VerifyMode::Dense, dense_cap(true))],
        ModeChoice::Tableau => vec![(VerifyMode::Tableau, 0)],
        ModeChoice::Both => {
            let cap = dense_cap(false);
            let mut m = vec![(VerifyMode::Tableau, 0)];
            if n <= cap {
                m.push((VerifyMode::Dense, cap));
            }
            m
        }
    };
    let (verdicts, root): (Vec<Verdict>, Option<usize>) = match role {
        Role::Fanout => {
            let root = root_flag
                .or(file_root)
                .ok_or("--root is required: the file does not record the fanout control")?;
            let v = modes
                .iter()
                .map(|&(m, cap)| verify_fanout(&circuit, root, m, cap))
                .collect::<Result<_, _>>()?;
            (v, Some(root))
        }
        Role::Ghz => {
            let v = modes
                .iter()
                .map(|&(m, cap)| verify_ghz_preparation(&circuit, m, cap))
                .collect::<Result<_, _>>()?;
            (v, None)
        }
    };
    let pass = verdicts.iter().all(|v| v.pass);
    for v in &verdicts {
        eprintln!(
            "{}: {} check {}{}",
            path.display(),
            mode_name(v.mode),
            pass_word(v.pass),
            if v.pass {
                String::new()
            } else {
                format!(" ({})", v.failures.join(", "))
            }
        );
    }
    let doc = json!({
        "role": match role { Role::Fanout => "fanout", Role::Ghz => "ghz" },
        "root": root,
        "n": n,
        "pass": pass,
        "verdicts": verdicts,
    });
    emit(output, &pretty(&doc))?;
    Ok(if pass { Status::Ok } else { Status::Failed })
}
