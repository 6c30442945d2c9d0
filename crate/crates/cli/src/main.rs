use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use qgames::compose::{compose, interaction_json};
use qgames::dsl::{parse_strategy, parse_type};
use qgames::gates;
use qgames::scalar::{self, Scalar, ONE, ZERO};
use qgames::unitary::{is_reversible, is_unitary};
use qgames::{config, Error, Morphism, StrategyMatrix};

#[derive(Parser)]
#[command(name = "qgames", version, about = "Games, strategies and their matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Tolerance for scalar comparisons.
    #[arg(long, global = true, value_name = "FLOAT")]
    tolerance: Option<f64>,
    /// Budget for the interaction search during composition.
    #[arg(long, global = true, value_name = "INT")]
    max_states: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Moves, coherence, dimensions and axioms of a game.
    Game { ty: String },
    /// Maximal positions of a game.
    Positions { ty: String },
    /// Matrix of a strategy expression.
    Matrix { expr: String },
    /// Strategy axioms, reversibility and unitarity.
    Check { expr: String },
    /// Compare two strategies by their matrices.
    Eq { left: String, right: String },
    /// Worked examples: sqrt-not, sqrt-twist, toffoli, schwinger <n>.
    Demo { name: String, arg: Option<usize> },
}

enum Failure {
    Input(Error),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = Result<(), Failure>;

fn emit(json_mode: bool, value: &Value, text: impl FnOnce() -> String) {
    if json_mode {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    } else {
        print!("{}", text());
    }
}

fn matrix_json(m: &StrategyMatrix) -> Value {
    serde_json::to_value(m.to_json()).expect("serializable")
}

fn verdict_json(v: &qgames::Verdict) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn verdict_text(v: &qgames::Verdict) -> String {
    match v {
        qgames::Verdict::Pass => "pass".into(),
        qgames::Verdict::Fail(m) => format!("FAIL: {m}"),
        qgames::Verdict::Skipped(m) => format!("skipped: {m}"),
    }
}

fn cmd_game(ty: &str, json_mode: bool) -> Outcome {
    let g = parse_type(ty)?.eval()?;
    let axioms = g.check_axioms();
    let mut v = serde_json::to_value(g.to_json()).expect("serializable");
    v["axioms"] = serde_json::to_value(&axioms).expect("serializable");
    emit(json_mode, &v, || {
        let (o, p) = g.hilbert_dims();
        let mut s = format!("game {}\nmoves:", g.shape());
        for m in g.moves() {
            s += &format!(" {m}:{}{}", m.owner().letter(), if m.is_question() { "Q" } else { "A" });
        }
        s += &format!("\npositions: {}\ndims: O {o}, P {p}\n", g.positions().len());
        for (name, v) in axioms.verdicts() {
            s += &format!("{name}: {}\n", verdict_text(v));
        }
        s
    });
    Ok(())
}

fn cmd_positions(ty: &str, json_mode: bool) -> Outcome {
    let g = parse_type(ty)?.eval()?;
    let names: Vec<Vec<String>> = g.positions().iter().map(|p| g.position_names(p)).collect();
    emit(json_mode, &json!({ "game": g.shape().to_string(), "positions": names }), || {
        g.positions().iter().map(|p| format!("{}\n", g.format_position(p))).collect()
    });
    Ok(())
}

fn eval(expr: &str) -> Result<Morphism, Error> {
    parse_strategy(expr)?.eval()
}

fn cmd_matrix(expr: &str, json_mode: bool) -> Outcome {
    let m = eval(expr)?;
    let mx = m.matrix()?;
    let mut v = matrix_json(&mx);
    v["game"] = json!(m.arena().shape().to_string());
    emit(json_mode, &v, || format!("{}\n{mx}", m.arena().shape()));
    Ok(())
}

fn cmd_check(expr: &str, json_mode: bool) -> Outcome {
    let m = eval(expr)?;
    let mut ok = true;
    let mut summands = Vec::new();
    let mut text = format!("{}\n", m.arena().shape());
    for (i, ((z, s), report)) in m.summands().iter().zip(m.validate()).enumerate() {
        ok &= report.all_ok();
        let cert = is_reversible(s)?;
        text += &format!("summand {i} (coefficient {}, {} plays)\n", scalar::format(*z), s.len());
        for (name, v) in report.verdicts() {
            text += &format!("  {name}: {}\n", verdict_text(v));
        }
        text += &format!("  reversible: {}\n", if cert.holds() { "yes" } else { "no" });
        summands.push(json!({
            "coefficient": scalar::to_pair(*z),
            "plays": s.len(),
            "axioms": report.verdicts().iter().map(|(n, v)| (n.to_string(), verdict_json(v))).collect::<serde_json::Map<_, _>>(),
            "reversibility": cert,
        }));
    }
    let unitary = is_unitary(&m)?;
    text += &format!("unitary: {}\n", if unitary { "yes" } else { "no" });
    let v = json!({ "game": m.arena().shape().to_string(), "valid": ok, "summands": summands, "unitary": unitary });
    emit(json_mode, &v, || text);
    if ok { Ok(()) } else { Err(Failure::Check) }
}

fn cmd_eq(left: &str, right: &str, json_mode: bool) -> Outcome {
    let (a, b) = (eval(left)?, eval(right)?);
    let equal = a.equivalent(&b).map_err(|e| match e {
        Error::GameMismatch(msg) => Error::Type { node: format!("{left} = {right}"), msg },
        other => other,
    })?;
    let (ma, mb) = (a.matrix()?, b.matrix()?);
    let v = json!({ "left": matrix_json(&ma), "right": matrix_json(&mb), "equal": equal, "tolerance": config::tolerance() });
    emit(json_mode, &v, || format!("{ma}\n{mb}\n{}\n", if equal { "equal" } else { "NOT equal" }));
    if equal { Ok(()) } else { Err(Failure::Check) }
}

fn perm_rows(size: usize, f: impl Fn(usize) -> usize) -> Vec<Vec<Scalar>> {
    (0..size).map(|x| (0..size).map(|y| if f(x) == y { ONE } else { ZERO }).collect()).collect()
}

fn demo_sqrt_not(json_mode: bool) -> Result<bool, Error> {
    let s = gates::sqrt_not()?;
    let table = interaction_json(&s, &s)?;
    let result = compose(&s, &s)?;
    let m = result.matrix()?;
    let ok = m.approx_eq_rows(&perm_rows(2, |x| 1 - x)) && table.len() == 8;
    let v = json!({ "demo": "sqrt-not", "ok": ok, "interactions": table, "matrix": matrix_json(&m) });
    emit(json_mode, &v, || {
        let mut s = String::from("interactions of sqrtnot || sqrtnot:\n");
        for it in &table {
            let w = Scalar::new(it.weight[0], it.weight[1]);
            s += &format!("  {:>6}  {}\n", scalar::format(w), it.moves.join(" "));
        }
        s += "after hiding the middle Bool and summing:\n";
        for (z, p) in result.flatten() {
            s += &format!("  {:>6}  {}\n", scalar::format(z), result.arena().format_position(&p));
        }
        format!("{s}matrix:\n{m}")
    });
    Ok(ok)
}

fn demo_sqrt_twist(json_mode: bool) -> Result<bool, Error> {
    let b = qgames::constructors::bool_game();
    let s = gates::sqrt_twist(&b)?;
    let m = compose(&s, &s)?.matrix()?;
    let twist = qgames::structural::twist_tensor(&b, &b)?.matrix()?;
    let unitary = is_unitary(&s)?;
    let ok = m.approx_eq(&twist) && unitary;
    let v = json!({
        "demo": "sqrt-twist",
        "ok": ok,
        "sqrt_twist": matrix_json(&s.matrix()?),
        "matrix": matrix_json(&m),
        "twist": matrix_json(&twist),
        "unitary": unitary,
    });
    emit(json_mode, &v, || {
        format!("sqrttwist:\n{}\nsqrttwist ; sqrttwist:\n{m}\nequals twist: {}\nunitary: {unitary}\n", s.matrix().unwrap(), m.approx_eq(&twist))
    });
    Ok(ok)
}

fn demo_toffoli(json_mode: bool) -> Result<bool, Error> {
    let m = gates::toffoli()?.matrix()?;
    let oracle = perm_rows(8, |x| if x >= 6 { x ^ 1 } else { x });
    let cnot = gates::cntrl(&gates::not_gate()?)?.matrix()?;
    let cnot_oracle = perm_rows(4, |x| if x >= 2 { x ^ 1 } else { x });
    let ok = m.approx_eq_rows(&oracle) && cnot.approx_eq_rows(&cnot_oracle);
    let v = json!({ "demo": "toffoli", "ok": ok, "matrix": matrix_json(&m), "cnot": matrix_json(&cnot) });
    emit(json_mode, &v, || format!("cntrl(not):\n{cnot}\ntoffoli:\n{m}\nmatches truth tables: {ok}\n"));
    Ok(ok)
}

fn demo_schwinger(n: usize, json_mode: bool) -> Result<bool, Error> {
    let shift = gates::schwinger_shift(n)?.matrix()?;
    let clock = gates::schwinger_clock(n)?.matrix()?;
    let expected_shift = perm_rows(n, |x| (x + n - 1) % n);
    let expected_clock: Vec<Vec<Scalar>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { scalar::root_of_unity(n as u32, i as i64) } else { ZERO }).collect())
        .collect();
    let ok = shift.approx_eq_rows(&expected_shift) && clock.approx_eq_rows(&expected_clock);
    let v = json!({ "demo": "schwinger", "n": n, "ok": ok, "shift": matrix_json(&shift), "clock": matrix_json(&clock) });
    emit(json_mode, &v, || format!("shift:\n{shift}\nclock:\n{clock}\nmatches expected: {ok}\n"));
    Ok(ok)
}

fn cmd_demo(name: &str, arg: Option<usize>, json_mode: bool) -> Outcome {
    let ok = match name {
        "sqrt-not" => demo_sqrt_not(json_mode)?,
        "sqrt-twist" => demo_sqrt_twist(json_mode)?,
        "toffoli" => demo_toffoli(json_mode)?,
        "schwinger" => demo_schwinger(arg.unwrap_or(5), json_mode)?,
        other => {
            return Err(Failure::Input(Error::InvalidArgument(format!(
                "unknown demo `{other}` (sqrt-not, sqrt-twist, toffoli, schwinger)"
            ))))
        }
    };
    if ok { Ok(()) } else { Err(Failure::Check) }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.tolerance {
        config::set_tolerance(t);
    }
    if let Some(n) = cli.max_states {
        config::set_max_states(n);
    }
    let j = cli.json;
    let result = match &cli.command {
        Command::Game { ty } => cmd_game(ty, j),
        Command::Positions { ty } => cmd_positions(ty, j),
        Command::Matrix { expr } => cmd_matrix(expr, j),
        Command::Check { expr } => cmd_check(expr, j),
        Command::Eq { left, right } => cmd_eq(left, right, j),
        Command::Demo { name, arg } => cmd_demo(name, *arg, j),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(2),
        Err(Failure::Input(e)) => {
            if j {
                println!("{}", json!({ "error": e.to_string() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
