//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the process fails if any criterion fails.

use std::collections::HashMap;
use std::process::Command;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde_json::Value;

use qgames::compose::{compose, interaction_json, trace_oracle};
use qgames::constructors::{bool_game, lollipop, oplus, qbit, tensor, unit_game, with};
use qgames::gates::{self, BitPermutation};
use qgames::scalar::{self, half_one_plus_i, Scalar, ONE, ZERO};
use qgames::structural::{
    assoc_tensor, assoc_tensor_inv, curry, copair, dist, dist_inv, identity, injl, injr, tensor_morphisms,
    twist_tensor,
};
use qgames::unitary::{is_reversible_morphism, is_unitary};
use qgames::{CliqueLabel, Game, Morphism, Move, Shape, StrategyMatrix, Tag, Verdict};

const TOL: f64 = 1e-9;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn q<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn close(a: Scalar, b: Scalar) -> bool {
    (a - b).norm() <= TOL
}

fn perm_rows(size: usize, f: impl Fn(usize) -> usize) -> Vec<Vec<Scalar>> {
    (0..size).map(|x| (0..size).map(|y| if f(x) == y { ONE } else { ZERO }).collect()).collect()
}

fn same_rows(m: &StrategyMatrix, rows: &[Vec<Scalar>]) -> bool {
    m.n_rows() == rows.len()
        && rows.iter().enumerate().all(|(i, r)| r.len() == m.n_cols() && r.iter().enumerate().all(|(j, &z)| close(m.get(i, j), z)))
}

fn same_matrix(a: &Morphism, b: &Morphism) -> Result<bool, String> {
    let (ma, mb) = (q(a.matrix())?, q(b.matrix())?);
    Ok(ma.row_labels() == mb.row_labels() && ma.col_labels() == mb.col_labels() && same_rows(&ma, &mb.to_rows()))
}

fn is_identity(m: &Morphism) -> Result<bool, String> {
    let mx = q(m.matrix())?;
    Ok(mx.is_square() && same_rows(&mx, &perm_rows(mx.n_rows(), |x| x)))
}

fn fmt(s: &Game) -> Vec<String> {
    s.positions().iter().map(|p| s.format_position(p)).collect()
}

// 1
fn position_counts() -> Check {
    let b = bool_game();
    let t = tensor(&b, &b).positions().len();
    let l = lollipop(&b, &b).positions().len();
    ensure(t == 8, || format!("Bool⊗Bool has {t} maximal positions"))?;
    ensure(l == 4, || format!("Bool⊸Bool has {l} maximal positions"))?;
    let mut want = Vec::new();
    for (tag, side) in [("l", "L"), ("r", "R")] {
        for a in ["ff", "tt"] {
            want.push(format!("⊥_P {tag}_P ⊥_{side} {a}_{side}"));
        }
    }
    let got = fmt(&oplus(&b, &b));
    ensure(got == want, || format!("Bool⊕Bool positions {got:?}"))?;
    Ok("8 / 4 / ⊥ l ⊥₁a₁, ⊥ r ⊥₂b₂".into())
}

// 2
fn sqrt_not_law() -> Check {
    let s = q(gates::sqrt_not())?;
    let m = q(q(compose(&s, &s))?.matrix())?;
    ensure(same_rows(&m, &perm_rows(2, |x| 1 - x)), || format!("√NOT;√NOT is\n{m}"))?;
    let table = q(interaction_json(&s, &s))?;
    ensure(table.len() == 8, || format!("{} interactions", table.len()))?;
    let z = half_one_plus_i();
    let mut families: HashMap<&str, usize> = HashMap::new();
    for it in &table {
        // moves: ⊥₃ ⊥₂ ⊥₁ a₁ b₂ c₃; each stage is id (value kept) or NOT
        let v: Vec<&str> = it.moves.iter().map(|m| m.split('_').next().unwrap()).collect();
        ensure(v.len() == 6, || format!("interaction {:?}", it.moves))?;
        let (first_id, second_id) = (v[3] == v[4], v[4] == v[5]);
        let (want, family) = match (first_id, second_id) {
            (true, true) => (z * z, "z²"),
            (false, false) => (z.conj() * z.conj(), "z̄²"),
            _ => (z * z.conj(), "zz̄"),
        };
        let got = Scalar::new(it.weight[0], it.weight[1]);
        ensure(close(got, want), || format!("{:?} has weight {got}, want {want}", it.moves))?;
        ensure(!it.hidden.is_empty(), || "interaction lists no hidden moves".into())?;
        *families.entry(family).or_default() += 1;
    }
    ensure(families.get("z²") == Some(&2) && families.get("z̄²") == Some(&2) && families.get("zz̄") == Some(&4), || {
        format!("families {families:?}")
    })?;
    Ok("8 interactions (2·z², 4·zz̄, 2·z̄²), composite = NOT".into())
}

// 3
fn sqrt_twist_law() -> Check {
    let b = bool_game();
    let s = q(gates::sqrt_twist(&b))?;
    let twist = q(twist_tensor(&b, &b))?;
    ensure(same_matrix(&q(compose(&s, &s))?, &twist)?, || "√twist;√twist differs from twist".into())?;
    ensure(q(is_unitary(&s))?, || "√twist is not unitary".into())?;
    Ok("√twist;√twist = twist, unitary".into())
}

// 4
fn schwinger_five() -> Check {
    let n = 5;
    let shift = q(q(gates::schwinger_shift(n))?.matrix())?;
    let clock = q(q(gates::schwinger_clock(n))?.matrix())?;
    ensure(shift.n_rows() == n && shift.n_cols() == n, || format!("shift is {}×{}", shift.n_rows(), shift.n_cols()))?;
    for i in 0..n {
        for j in 0..n {
            let want = if j == (i + n - 1) % n { ONE } else { ZERO };
            ensure(shift.get(i, j) == want, || format!("shift[{i}][{j}] = {}", shift.get(i, j)))?;
            let want = if i == j { scalar::root_of_unity(n as u32, i as i64) } else { ZERO };
            ensure(close(clock.get(i, j), want), || format!("clock[{i}][{j}] = {}", clock.get(i, j)))?;
        }
    }
    Ok("shift exact, clock diag ω^k".into())
}

// 5
fn toffoli_oracle() -> Check {
    // basis index b₁b₂b₃ with b₁ most significant
    let truth = |x: usize| if (x >> 2) & 1 == 1 && (x >> 1) & 1 == 1 { x ^ 1 } else { x };
    let m = q(q(gates::toffoli())?.matrix())?;
    ensure(same_rows(&m, &perm_rows(8, truth)), || format!("toffoli is\n{m}"))?;
    let cnot = |x: usize| if x >> 1 == 1 { x ^ 1 } else { x };
    let c = q(q(gates::cntrl(&q(gates::not_gate())?))?.matrix())?;
    ensure(same_rows(&c, &perm_rows(4, cnot)), || format!("cntrl(NOT) is\n{c}"))?;
    Ok("toffoli and cntrl(NOT) match truth tables".into())
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in all_perms(n - 1) {
        for k in 0..=p.len() {
            let mut v = p.clone();
            v.insert(k, n - 1);
            out.push(v);
        }
    }
    out
}

// 6
fn two_bit_permutations() -> Check {
    let tables = all_perms(4);
    for t in &tables {
        let p = q(BitPermutation::new(2, t.clone()))?;
        let m = q(gates::perm_strategy(&p))?;
        for r in m.validate() {
            ensure(r.all_ok(), || format!("perm {t:?}: {r:?}"))?;
        }
        let mx = q(m.matrix())?;
        ensure(same_rows(&mx, &perm_rows(4, |x| t[x])), || format!("perm {t:?} has matrix\n{mx}"))?;
    }
    Ok(format!("{} bijections validate and match", tables.len()))
}

fn random_scalar(rng: &mut StdRng) -> Scalar {
    Scalar::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// `a·id + b·NOT` on `Bool`.
fn random_bool_map(rng: &mut StdRng) -> Result<Morphism, String> {
    let id = q(identity(&bool_game()))?;
    let not = q(gates::bool_not())?;
    q(id.scale(random_scalar(rng)).add(&not.scale(random_scalar(rng))))
}

fn random_perm(rng: &mut StdRng) -> Result<Morphism, String> {
    let mut t = vec![0, 1, 2, 3];
    t.shuffle(rng);
    q(gates::perm_strategy(&q(BitPermutation::new(2, t))?))
}

/// `z₁·p₁ + z₂·p₂` on `Bool ⊗ Bool` for random permutations.
fn random_two_bit_map(rng: &mut StdRng) -> Result<Morphism, String> {
    let (a, b) = (random_perm(rng)?, random_perm(rng)?);
    q(a.scale(random_scalar(rng)).add(&b.scale(random_scalar(rng))))
}

fn trace_agrees(d: &Morphism, e: &Morphism) -> Result<(), String> {
    let direct = q(q(compose(d, e))?.matrix())?;
    let oracle = q(trace_oracle(&q(d.matrix())?, &q(e.matrix())?, d.source(), e.target()))?;
    match direct.max_abs_diff(&oracle) {
        Some(diff) if diff <= TOL && direct.row_labels() == oracle.row_labels() => Ok(()),
        other => Err(format!("{} ; {}: difference {other:?}", d.arena().shape(), e.arena().shape())),
    }
}

// 7
fn trace_equivalence() -> Check {
    let (b, u, qb) = (bool_game(), unit_game(), qbit());
    let not = q(gates::bool_not())?;
    let sn = q(gates::sqrt_not())?;
    let twist = q(twist_tensor(&b, &b))?;
    let st = q(gates::sqrt_twist(&b))?;
    let cnot = q(gates::cntrl(&q(gates::not_gate())?))?;
    let (shift, clock) = (q(gates::schwinger_shift(3))?, q(gates::schwinger_clock(3))?);
    let mut pairs: Vec<(Morphism, Morphism)> = vec![
        (not.clone(), not.clone()),
        (sn.clone(), not.clone()),
        (sn.clone(), sn.clone()),
        (q(identity(&b))?, sn.clone()),
        (twist.clone(), twist.clone()),
        (st.clone(), twist.clone()),
        (st.clone(), st.clone()),
        (cnot.clone(), cnot.clone()),
        (q(gates::not_gate())?, q(gates::bool_diag(1))?),
        (shift.clone(), clock.clone()),
        (clock, shift.clone()),
        (q(injl(&b, &b))?, q(qgames::structural::twist_oplus(&b, &b))?),
        (q(dist(&b, &u, &u))?, q(dist_inv(&b, &u, &u))?),
        (q(gates::point_injection(3, 1))?, shift),
        (q(injr(&u, &u))?, q(gates::not_gate())?),
        (q(twist_tensor(&b, &qb))?, q(twist_tensor(&qb, &b))?),
    ];
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..10 {
        pairs.push((random_bool_map(&mut rng)?, random_bool_map(&mut rng)?));
    }
    for _ in 0..5 {
        let e = random_perm(&mut rng)?.scale(random_scalar(&mut rng));
        pairs.push((random_two_bit_map(&mut rng)?, e));
    }
    for (d, e) in &pairs {
        trace_agrees(d, e)?;
    }
    Ok(format!("{} composable pairs agree with the trace formula", pairs.len()))
}

/// Labels of `M_{σ⊗τ}` split into labels of `M_σ` and `M_τ`: a move at
/// `[a, b, rest..]` belongs to σ at `[a, rest..]` when `b = L`, else to τ.
fn split_tensor_label(l: &CliqueLabel) -> (CliqueLabel, CliqueLabel) {
    let (mut x, mut y) = (Vec::new(), Vec::new());
    for m in l.moves() {
        let mut path = vec![m.path[0]];
        path.extend_from_slice(&m.path[2..]);
        let moved = Move { path, base: m.base.clone(), label: m.label };
        if m.path[1] == Tag::Left { x.push(moved) } else { y.push(moved) }
    }
    (CliqueLabel::new(x), CliqueLabel::new(y))
}

fn index(labels: &[CliqueLabel]) -> HashMap<&CliqueLabel, usize> {
    labels.iter().enumerate().map(|(i, l)| (l, i)).collect()
}

fn tensor_matrix_law(s: &Morphism, t: &Morphism) -> Result<(), String> {
    let (ms, mt) = (q(s.matrix())?, q(t.matrix())?);
    let m = q(q(tensor_morphisms(s, t))?.matrix())?;
    ensure(m.n_rows() == ms.n_rows() * mt.n_rows() && m.n_cols() == ms.n_cols() * mt.n_cols(), || {
        format!("M_σ⊗τ is {}×{}", m.n_rows(), m.n_cols())
    })?;
    let (sr, sc, tr, tc) = (index(ms.row_labels()), index(ms.col_labels()), index(mt.row_labels()), index(mt.col_labels()));
    for (i, rl) in m.row_labels().iter().enumerate() {
        let (a, b) = split_tensor_label(rl);
        for (j, cl) in m.col_labels().iter().enumerate() {
            let (c, d) = split_tensor_label(cl);
            let want = ms.get(sr[&a], sc[&c]) * mt.get(tr[&b], tc[&d]);
            ensure(close(m.get(i, j), want), || format!("M_σ⊗τ[{rl}][{cl}] = {}, want {want}", m.get(i, j)))?;
        }
    }
    Ok(())
}

/// `G ⊸ (H ⊸ K)` addresses back to `G ⊗ H ⊸ K`.
fn uncurry_label(l: &CliqueLabel) -> CliqueLabel {
    CliqueLabel::new(
        l.moves()
            .iter()
            .map(|m| {
                let path = match (m.path[0], m.path.get(1)) {
                    (Tag::Left, _) => [&[Tag::Left, Tag::Left][..], &m.path[1..]].concat(),
                    (Tag::Right, Some(Tag::Left)) => [&[Tag::Left, Tag::Right][..], &m.path[2..]].concat(),
                    _ => [&[Tag::Right][..], &m.path[2..]].concat(),
                };
                Move { path, base: m.base.clone(), label: m.label }
            })
            .collect(),
    )
}

fn curry_matrix_law(s: &Morphism) -> Result<(), String> {
    let ms = q(s.matrix())?;
    let mc = q(q(curry(s))?.matrix())?;
    ensure(mc.n_rows() == ms.n_rows() && mc.n_cols() == ms.n_cols(), || "M_Λσ has other dimensions".into())?;
    let (r, c) = (index(ms.row_labels()), index(ms.col_labels()));
    for (i, rl) in mc.row_labels().iter().enumerate() {
        for (j, cl) in mc.col_labels().iter().enumerate() {
            let (Some(&a), Some(&b)) = (r.get(&uncurry_label(rl)), c.get(&uncurry_label(cl))) else {
                return Err(format!("no label of M_σ for {rl} / {cl}"));
            };
            ensure(close(mc.get(i, j), ms.get(a, b)), || format!("M_Λσ[{rl}][{cl}] differs"))?;
        }
    }
    Ok(())
}

// 8
fn category_laws() -> Check {
    let (b, u, qb) = (bool_game(), unit_game(), qbit());
    let mut laws = 0;
    let samples = [
        q(gates::sqrt_not())?,
        q(gates::cntrl(&q(gates::not_gate())?))?,
        q(gates::schwinger_shift(3))?,
        q(injl(&b, &b))?,
        q(dist(&b, &u, &u))?,
    ];
    for s in &samples {
        let left = q(compose(&q(identity(s.source()))?, s))?;
        let right = q(compose(s, &q(identity(s.target()))?))?;
        ensure(same_matrix(&left, s)? && same_matrix(&right, s)?, || format!("identity law fails on {}", s.arena().shape()))?;
        laws += 2;
    }
    let mut rng = StdRng::seed_from_u64(8);
    for k in 0..9 {
        let pick = |rng: &mut StdRng| if k < 6 { random_bool_map(rng) } else { random_two_bit_map(rng) };
        let (x, y, z) = (pick(&mut rng)?, pick(&mut rng)?, pick(&mut rng)?);
        let lhs = q(compose(&q(compose(&x, &y))?, &z))?;
        let rhs = q(compose(&x, &q(compose(&y, &z))?))?;
        ensure(same_matrix(&lhs, &rhs)?, || format!("associativity fails on triple {k}"))?;
        laws += 1;
    }
    for (g, h) in [(&b, &b), (&b, &qb)] {
        let tt = q(compose(&q(twist_tensor(g, h))?, &q(twist_tensor(h, g))?))?;
        ensure(is_identity(&tt)?, || format!("twist;twist ≠ id on {}", tt.arena().shape()))?;
        laws += 1;
    }
    for (g1, g2, g3) in [(&b, &b, &b), (&b, &qb, &u)] {
        let (a, ai) = (q(assoc_tensor(g1, g2, g3))?, q(assoc_tensor_inv(g1, g2, g3))?);
        ensure(is_identity(&q(compose(&a, &ai))?)? && is_identity(&q(compose(&ai, &a))?)?, || {
            format!("assoc;assoc⁻¹ ≠ id on {}", a.arena().shape())
        })?;
        laws += 2;
    }
    for (g1, g2, g3) in [(&b, &u, &u), (&qb, &b, &u)] {
        let (d, di) = (q(dist(g1, g2, g3))?, q(dist_inv(g1, g2, g3))?);
        ensure(is_identity(&q(compose(&d, &di))?)? && is_identity(&q(compose(&di, &d))?)?, || {
            format!("dist;dist⁻¹ ≠ id on {}", d.arena().shape())
        })?;
        laws += 2;
    }
    let tensors = [
        (q(gates::sqrt_not())?, q(gates::bool_not())?),
        (q(gates::not_gate())?, q(gates::bool_diag(1))?),
        (q(injl(&u, &u))?, q(gates::sqrt_not())?),
        (q(gates::schwinger_clock(3))?, q(gates::not_gate())?),
    ];
    for (s, t) in &tensors {
        tensor_matrix_law(s, t)?;
        laws += 1;
    }
    let curried = [q(twist_tensor(&b, &b))?, q(gates::sqrt_twist(&b))?, random_two_bit_map(&mut rng)?, q(dist(&b, &u, &u))?];
    for s in &curried {
        curry_matrix_law(s)?;
        laws += 1;
    }
    Ok(format!("{laws} law instances hold"))
}

fn shapes(k: usize) -> Vec<Shape> {
    if k == 0 {
        return vec![Shape::One, Shape::Bool];
    }
    let mut out = Vec::new();
    for i in 0..k {
        let (xs, ys) = (shapes(i), shapes(k - 1 - i));
        for x in &xs {
            for y in &ys {
                let (x, y) = (Box::new(x.clone()), Box::new(y.clone()));
                out.push(Shape::Tensor(x.clone(), y.clone()));
                out.push(Shape::Lolli(x.clone(), y.clone()));
                out.push(Shape::With(x.clone(), y.clone()));
                out.push(Shape::Oplus(x, y));
            }
        }
    }
    out
}

fn build(s: &Shape, cache: &mut HashMap<Shape, Game>) -> Game {
    if let Some(g) = cache.get(s) {
        return g.clone();
    }
    let g = match s {
        Shape::One => unit_game(),
        Shape::Bool => bool_game(),
        Shape::Tensor(a, b) => tensor(&build(a, cache), &build(b, cache)),
        Shape::Lolli(a, b) => lollipop(&build(a, cache), &build(b, cache)),
        Shape::With(a, b) => with(&build(a, cache), &build(b, cache)),
        Shape::Oplus(a, b) => oplus(&build(a, cache), &build(b, cache)),
    };
    cache.insert(s.clone(), g.clone());
    g
}

// 9
fn game_axioms() -> Check {
    let mut cache = HashMap::new();
    let (mut games, mut skipped) = (0, 0);
    for k in 0..=4 {
        for s in shapes(k) {
            let g = build(&s, &mut cache);
            let report = g.check_axioms();
            for (name, v) in report.verdicts() {
                match v {
                    Verdict::Pass => {}
                    Verdict::Skipped(_) if name == "extension" => skipped += 1,
                    other => return Err(format!("{s}: {name} {other}")),
                }
            }
            games += 1;
        }
    }
    Ok(format!("{games} games pass ({skipped} extension checks skipped by the size guard)"))
}

fn copair_of(a: &Morphism, b: &Morphism) -> Result<Morphism, String> {
    let (g, h) = (a.target().as_ref(), b.target().as_ref());
    let left = q(compose(a, &q(injl(g, h))?))?;
    let right = q(compose(b, &q(injr(g, h))?))?;
    q(copair(&left, &right))
}

// 10
fn closure() -> Check {
    let b = bool_game();
    let mut rng = StdRng::seed_from_u64(10);
    let mut cases = 0;
    for _ in 0..20 {
        let (x, y) = (random_perm(&mut rng)?, random_perm(&mut rng)?);
        ensure(q(is_reversible_morphism(&x))?.holds() && q(is_reversible_morphism(&y))?.holds(), || "perm not reversible".into())?;
        ensure(q(is_reversible_morphism(&q(compose(&x, &y))?))?.holds(), || "composite of reversible perms is not reversible".into())?;
        cases += 1;
    }
    let groups: Vec<Vec<Morphism>> = vec![
        vec![q(gates::sqrt_not())?, q(gates::bool_not())?, q(identity(&b))?],
        vec![q(gates::not_gate())?, q(gates::bool_diag(1))?, q(identity(&qbit()))?],
        vec![
            q(gates::sqrt_twist(&b))?,
            q(twist_tensor(&b, &b))?,
            random_perm(&mut rng)?,
            random_perm(&mut rng)?,
            random_perm(&mut rng)?,
            random_perm(&mut rng)?,
        ],
        vec![q(gates::cntrl(&q(gates::not_gate())?))?, q(gates::bool_diag(2))?],
        vec![q(gates::schwinger_shift(3))?, q(gates::schwinger_clock(3))?],
    ];
    for group in &groups {
        for m in group {
            ensure(q(is_unitary(m))?, || format!("{} member is not unitary", m.arena().shape()))?;
        }
        for x in group {
            for y in group {
                ensure(q(is_unitary(&q(compose(x, y))?))?, || format!("composite on {} is not unitary", x.arena().shape()))?;
                cases += 1;
            }
        }
    }
    let pairs = [(0, 0, 1, 0), (0, 1, 1, 1), (1, 0, 4, 1), (2, 0, 0, 0), (3, 1, 1, 0)];
    for &(gi, i, gj, j) in &pairs {
        let (x, y) = (&groups[gi][i], &groups[gj][j]);
        ensure(q(is_unitary(&q(tensor_morphisms(x, y))?))?, || "tensor of unitaries is not unitary".into())?;
        ensure(q(is_unitary(&copair_of(x, y)?))?, || "copair of unitaries is not unitary".into())?;
        cases += 2;
    }
    ensure(cases >= 50, || format!("only {cases} cases"))?;
    Ok(format!("{cases} generated cases closed"))
}

// 11
fn constant_tt_rejected() -> Check {
    let b = std::sync::Arc::new(bool_game());
    let arena = std::sync::Arc::new(lollipop(&b, &b));
    let plays: [(Scalar, &[&str]); 2] =
        [(ONE, &["⊥_R", "⊥_L", "ff_L", "tt_R"]), (ONE, &["⊥_R", "⊥_L", "tt_L", "tt_R"])];
    let s = q(qgames::Strategy::from_names(arena, &plays))?;
    let report = s.validate();
    ensure(report.determinacy.is_pass() && report.monotonicity.is_pass(), || format!("{report:?}"))?;
    match &report.incoherence {
        Verdict::Fail(why) if why.contains("⊥_R ⊥_L ff_L") && why.contains("⊥_R ⊥_L tt_L") => Ok(why.clone()),
        other => Err(format!("incoherence-preservation gave {other}")),
    }
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_qgames")).args(args).arg("--json").output().map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("`qgames {}` exited with {:?}", args.join(" "), out.status.code()))?;
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn json_rows(v: &Value) -> Result<Vec<Vec<Scalar>>, String> {
    let rows = v["entries"].as_array().ok_or("matrix has no entries")?;
    rows.iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| "row is not an array".to_string())?
                .iter()
                .map(|z| Ok(Scalar::new(z[0].as_f64().ok_or("bad scalar")?, z[1].as_f64().ok_or("bad scalar")?)))
                .collect()
        })
        .collect()
}

fn json_matches(v: &Value, want: &[Vec<Scalar>]) -> Result<bool, String> {
    let got = json_rows(v)?;
    Ok(got.len() == want.len()
        && got.iter().zip(want).all(|(g, w)| g.len() == w.len() && g.iter().zip(w).all(|(&a, &b)| close(a, b))))
}

// 12
fn cli_demos() -> Check {
    let v = cli_json(&["demo", "sqrt-not"])?;
    ensure(v["ok"] == true && v["interactions"].as_array().map(Vec::len) == Some(8), || "sqrt-not demo".into())?;
    ensure(json_matches(&v["matrix"], &perm_rows(2, |x| 1 - x))?, || "sqrt-not matrix".into())?;
    let v = cli_json(&["demo", "sqrt-twist"])?;
    ensure(v["ok"] == true && v["unitary"] == true, || "sqrt-twist demo".into())?;
    ensure(json_matches(&v["matrix"], &perm_rows(4, |x| [0, 2, 1, 3][x]))?, || "sqrt-twist matrix".into())?;
    let v = cli_json(&["demo", "toffoli"])?;
    ensure(v["ok"] == true, || "toffoli demo".into())?;
    ensure(json_matches(&v["matrix"], &perm_rows(8, |x| if x >= 6 { x ^ 1 } else { x }))?, || "toffoli matrix".into())?;
    ensure(json_matches(&v["cnot"], &perm_rows(4, |x| if x >= 2 { x ^ 1 } else { x }))?, || "cnot matrix".into())?;
    let v = cli_json(&["demo", "schwinger", "5"])?;
    ensure(v["ok"] == true, || "schwinger demo".into())?;
    ensure(json_matches(&v["shift"], &perm_rows(5, |x| (x + 4) % 5))?, || "shift matrix".into())?;
    let clock: Vec<Vec<Scalar>> =
        (0..5).map(|i| (0..5).map(|j| if i == j { scalar::root_of_unity(5, i as i64) } else { ZERO }).collect()).collect();
    ensure(json_matches(&v["clock"], &clock)?, || "clock matrix".into())?;
    Ok("sqrt-not, sqrt-twist, toffoli, schwinger 5 exit 0 with matching JSON".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 12] = [
        ("position counts", position_counts),
        ("sqrt-not law", sqrt_not_law),
        ("sqrt-twist law", sqrt_twist_law),
        ("schwinger n=5", schwinger_five),
        ("toffoli and cnot", toffoli_oracle),
        ("two-bit permutations", two_bit_permutations),
        ("trace formula", trace_equivalence),
        ("category and monoidal laws", category_laws),
        ("game axioms", game_axioms),
        ("closure", closure),
        ("constant-tt rejected", constant_tt_rejected),
        ("cli demos", cli_demos),
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail}) [{ms} ms]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why}) [{ms} ms]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.1} s", criteria.len() - failed, criteria.len(), total.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
