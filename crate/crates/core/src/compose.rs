//! Composition by parallel interaction and hiding, and the matrix contraction
//! it must agree with.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::config;
use crate::constructors::lollipop;
use crate::error::{Error, Result};
use crate::game::{CliqueLabel, Game, Position, Tag};
use crate::matrix::StrategyMatrix;
use crate::scalar::{self, Scalar, ONE};
use crate::strategy::{matrix_of_plays, same_game, Morphism, Strategy};
use crate::trie::{Trie, ROOT};

/// Which of the three games `G ⊸ H ⊸ K` a move of an interaction lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Part {
    G,
    H,
    K,
}

impl Part {
    fn subscript(self) -> char {
        match self {
            Part::G => '1',
            Part::H => '2',
            Part::K => '3',
        }
    }
}

/// A weighted interaction sequence; moves index into the component games.
#[derive(Debug, Clone, PartialEq)]
pub struct Interaction {
    pub weight: Scalar,
    pub moves: Vec<(Part, usize)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InteractionJson {
    pub weight: [f64; 2],
    pub moves: Vec<String>,
    pub hidden: Vec<String>,
}

/// Move tables linking the arenas `G ⊸ H`, `H ⊸ K` and `G ⊸ K`.
struct Plan<'a> {
    g: &'a Game,
    h: &'a Game,
    k: &'a Game,
    left: Vec<(Part, usize)>,
    right: Vec<(Part, usize)>,
    h_in_right: Vec<usize>,
    g_in_out: Vec<usize>,
    k_in_out: Vec<usize>,
}

fn side_map(arena: &Game, l: (Part, &Game), r: (Part, &Game)) -> Result<Vec<(Part, usize)>> {
    arena
        .moves()
        .iter()
        .map(|m| {
            let (part, game) = match m.path.first() {
                Some(Tag::Left) => l,
                Some(Tag::Right) => r,
                _ => return Err(Error::Internal(format!("move {m} has no side"))),
            };
            game.find_move(&m.path[1..], &m.base)
                .map(|i| (part, i))
                .ok_or_else(|| Error::Internal(format!("move {m} missing from its component")))
        })
        .collect()
}

fn embed(component: &Game, arena: &Game, tag: Tag) -> Result<Vec<usize>> {
    component
        .moves()
        .iter()
        .map(|m| {
            let mut path = vec![tag];
            path.extend_from_slice(&m.path);
            arena.find_move(&path, &m.base).ok_or_else(|| Error::Internal(format!("move {m} missing from arena")))
        })
        .collect()
}

impl<'a> Plan<'a> {
    fn new(g: &'a Game, h: &'a Game, k: &'a Game, left: &Game, right: &Game, out: &Game) -> Result<Plan<'a>> {
        Ok(Plan {
            g,
            h,
            k,
            left: side_map(left, (Part::G, g), (Part::H, h))?,
            right: side_map(right, (Part::H, h), (Part::K, k))?,
            h_in_right: embed(h, right, Tag::Left)?,
            g_in_out: if out.is_empty() { Vec::new() } else { embed(g, out, Tag::Left)? },
            k_in_out: if out.is_empty() { Vec::new() } else { embed(k, out, Tag::Right)? },
        })
    }

    fn game(&self, part: Part) -> &Game {
        match part {
            Part::G => self.g,
            Part::H => self.h,
            Part::K => self.k,
        }
    }

    fn name(&self, (part, i): (Part, usize)) -> String {
        let m = self.game(part).move_at(i);
        format!("{}_{}{}", m.base, part.subscript(), m.path_string())
    }

    fn hide(&self, seq: &[(Part, usize)]) -> Position {
        seq.iter()
            .filter_map(|&(part, i)| match part {
                Part::G => Some(self.g_in_out[i]),
                Part::K => Some(self.k_in_out[i]),
                Part::H => None,
            })
            .collect()
    }
}

struct Walk<'a> {
    plan: &'a Plan<'a>,
    sigma: &'a Strategy,
    tau: &'a Strategy,
    st: Trie,
    tt: Trie,
    states: usize,
    budget: usize,
    seq: Vec<(Part, usize)>,
    out: Vec<Interaction>,
}

impl Walk<'_> {
    fn run(&mut self, a: usize, b: usize) -> Result<()> {
        self.states += 1;
        if self.states > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        if self.st.is_terminal(a) && self.tt.is_terminal(b) {
            let w = self.sigma.weight_of(&self.st.sequence(a)).unwrap_or(ONE)
                * self.tau.weight_of(&self.tt.sequence(b)).unwrap_or(ONE);
            self.out.push(Interaction { weight: w, moves: self.seq.clone() });
        }
        let left: Vec<(usize, usize)> = self.st.children(a).to_vec();
        for (m, a2) in left {
            let (part, i) = self.plan.left[m];
            let b2 = match part {
                Part::H => match self.tt.child(b, self.plan.h_in_right[i]) {
                    Some(b2) => b2,
                    None => continue,
                },
                _ => b,
            };
            self.seq.push((part, i));
            self.run(a2, b2)?;
            self.seq.pop();
        }
        let right: Vec<(usize, usize)> = self.tt.children(b).to_vec();
        for (m, b2) in right {
            let (part, i) = self.plan.right[m];
            if part != Part::K {
                continue;
            }
            self.seq.push((part, i));
            self.run(a, b2)?;
            self.seq.pop();
        }
        Ok(())
    }
}

fn interactions(plan: &Plan<'_>, sigma: &Strategy, tau: &Strategy) -> Result<Vec<Interaction>> {
    let mut walk = Walk {
        plan,
        sigma,
        tau,
        st: sigma.trie(),
        tt: tau.trie(),
        states: 0,
        budget: config::max_states(),
        seq: Vec::new(),
        out: Vec::new(),
    };
    walk.run(ROOT, ROOT)?;
    Ok(walk.out)
}

/// `σ ; τ` for deterministic strategies, checked against the strategy axioms.
fn compose_pair(plan: &Plan<'_>, out: &Arc<Game>, sigma: &Strategy, tau: &Strategy) -> Result<Strategy> {
    let mut acc: BTreeMap<Position, Scalar> = BTreeMap::new();
    for it in interactions(plan, sigma, tau)? {
        *acc.entry(plan.hide(&it.moves)).or_insert(scalar::ZERO) += it.weight;
    }
    let plays = acc.into_iter().filter(|(_, z)| !scalar::is_zero(*z)).map(|(p, z)| (z, p)).collect();
    let s = Strategy::new(out.clone(), plays).map_err(|e| Error::Internal(format!("composite is not a strategy: {e}")))?;
    let report = s.validate();
    for (name, v) in report.verdicts() {
        if !v.is_ok() {
            return Err(Error::Internal(format!("composite fails {name}: {v:?}")));
        }
    }
    Ok(s)
}

fn check_composable(d: &Morphism, e: &Morphism) -> Result<()> {
    if same_game(d.target(), e.source()) {
        Ok(())
    } else {
        Err(Error::GameMismatch(format!("cannot compose through {} and {}", d.target().shape(), e.source().shape())))
    }
}

/// `Δ ; Γ = Σ zᵢuⱼ σᵢ;τⱼ`.
pub fn compose(d: &Morphism, e: &Morphism) -> Result<Morphism> {
    check_composable(d, e)?;
    let out = Arc::new(lollipop(d.source(), e.target()));
    let plan = Plan::new(d.source(), d.target(), e.target(), d.arena(), e.arena(), &out)?;
    let mut summands = Vec::new();
    for (z, s) in d.summands() {
        for (u, t) in e.summands() {
            summands.push((z * u, compose_pair(&plan, &out, s, t)?));
        }
    }
    Ok(Morphism::from_parts(d.source().clone(), e.target().clone(), out, summands))
}

/// The weighted interaction sequences of `Δ ∥ Γ` before hiding, with equal
/// sequences merged.
pub fn interaction_set(d: &Morphism, e: &Morphism) -> Result<Vec<Interaction>> {
    check_composable(d, e)?;
    let out = lollipop(d.source(), e.target());
    let plan = Plan::new(d.source(), d.target(), e.target(), d.arena(), e.arena(), &out)?;
    let mut acc: BTreeMap<Vec<(Part, usize)>, Scalar> = BTreeMap::new();
    for (z, s) in d.summands() {
        for (u, t) in e.summands() {
            for it in interactions(&plan, s, t)? {
                *acc.entry(it.moves).or_insert(scalar::ZERO) += z * u * it.weight;
            }
        }
    }
    Ok(acc.into_iter().map(|(moves, weight)| Interaction { weight, moves }).collect())
}

/// Interactions in printable form, each with its hidden restriction.
pub fn interaction_json(d: &Morphism, e: &Morphism) -> Result<Vec<InteractionJson>> {
    let out = lollipop(d.source(), e.target());
    let plan = Plan::new(d.source(), d.target(), e.target(), d.arena(), e.arena(), &out)?;
    Ok(interaction_set(d, e)?
        .into_iter()
        .map(|it| InteractionJson {
            weight: scalar::to_pair(it.weight),
            moves: it.moves.iter().map(|&m| plan.name(m)).collect(),
            hidden: it.moves.iter().filter(|m| m.0 != Part::H).map(|&m| plan.name(m)).collect(),
        })
        .collect())
}

/// True when every position of `σ ; τ` arises from exactly one interaction.
pub fn unique_witness_check(d: &Morphism, e: &Morphism) -> Result<bool> {
    let (Some(s), Some(t)) = (d.as_deterministic(), e.as_deterministic()) else {
        return Err(Error::InvalidArgument("witness uniqueness needs deterministic strategies".into()));
    };
    check_composable(d, e)?;
    let out = lollipop(d.source(), e.target());
    let plan = Plan::new(d.source(), d.target(), e.target(), d.arena(), e.arena(), &out)?;
    let mut count: HashMap<Position, usize> = HashMap::new();
    for it in interactions(&plan, &s, &t)? {
        *count.entry(plan.hide(&it.moves)).or_default() += 1;
    }
    Ok(count.values().all(|&n| n == 1))
}

type Key = Vec<(Vec<Tag>, String)>;

/// Parts of a label under the left and right components, with the side tag
/// removed and polarity ignored.
fn split(label: &CliqueLabel) -> (Key, Key) {
    let (mut l, mut r) = (Vec::new(), Vec::new());
    for m in label.moves() {
        let key = (m.path[1..].to_vec(), m.base.clone());
        match m.path.first() {
            Some(Tag::Left) => l.push(key),
            _ => r.push(key),
        }
    }
    l.sort();
    r.sort();
    (l, r)
}

/// Contract `M_σ` and `M_τ` over the middle game: entry
/// `((v₁,v₂),(v₁′,v₂′)) = Σ M_σ[(v₁,w′),(v₁′,w)] · M_τ[(w,v₂),(w′,v₂′)]`.
pub fn trace_oracle(ms: &StrategyMatrix, mt: &StrategyMatrix, g: &Game, k: &Game) -> Result<StrategyMatrix> {
    let out = lollipop(g, k);
    let mut m = matrix_of_plays(&out, std::iter::empty())?;
    let rows: HashMap<(Key, Key), usize> = m.row_labels().iter().enumerate().map(|(i, l)| (split(l), i)).collect();
    let cols: HashMap<(Key, Key), usize> = m.col_labels().iter().enumerate().map(|(i, l)| (split(l), i)).collect();
    let t_rows: Vec<(Key, Key)> = mt.row_labels().iter().map(split).collect();
    let t_cols: Vec<(Key, Key)> = mt.col_labels().iter().map(split).collect();
    let mut t_by_w: HashMap<&Key, Vec<usize>> = HashMap::new();
    for (i, (w, _)) in t_rows.iter().enumerate() {
        t_by_w.entry(w).or_default().push(i);
    }
    for (r, rl) in ms.row_labels().iter().enumerate() {
        let (v1, w2) = split(rl);
        for (c, cl) in ms.col_labels().iter().enumerate() {
            let a = ms.get(r, c);
            if scalar::is_zero(a) {
                continue;
            }
            let (v1p, w) = split(cl);
            for &r2 in t_by_w.get(&w).map(Vec::as_slice).unwrap_or(&[]) {
                for (c2, (w2p, v2p)) in t_cols.iter().enumerate() {
                    let b = mt.get(r2, c2);
                    if *w2p != w2 || scalar::is_zero(b) {
                        continue;
                    }
                    let v2 = &t_rows[r2].1;
                    let (Some(&i), Some(&j)) = (rows.get(&(v1.clone(), v2.clone())), cols.get(&(v1p.clone(), v2p.clone())))
                    else {
                        return Err(Error::DimensionMismatch(format!("no clique pair for {rl} / {cl} in the composite")));
                    };
                    m.add_at(i, j, a * b);
                }
            }
        }
    }
    Ok(m)
}
