//! Weighted strategies, their validity conditions, matrices, and formal sums.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::config;
use crate::constructors::lollipop;
use crate::error::{Error, Result};
use crate::game::{Game, Owner, Position, Verdict};
use crate::matrix::StrategyMatrix;
use crate::scalar::{self, Scalar, ONE};
use crate::trie::{Trie, ROOT};

pub(crate) fn same_game(a: &Arc<Game>, b: &Arc<Game>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A deterministic strategy: scalars attached to maximal positions.
#[derive(Debug, Clone)]
pub struct Strategy {
    game: Arc<Game>,
    plays: Vec<(Scalar, Position)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrategyReport {
    pub determinacy: Verdict,
    pub monotonicity: Verdict,
    pub incoherence: Verdict,
}

impl StrategyReport {
    pub fn all_ok(&self) -> bool {
        self.verdicts().iter().all(|(_, v)| v.is_ok())
    }

    pub fn verdicts(&self) -> [(&'static str, &Verdict); 3] {
        [
            ("determinacy", &self.determinacy),
            ("monotonicity", &self.monotonicity),
            ("incoherence-preservation", &self.incoherence),
        ]
    }
}

impl Strategy {
    /// Plays must be maximal positions of `game`, each listed once.
    pub fn new(game: Arc<Game>, mut plays: Vec<(Scalar, Position)>) -> Result<Strategy> {
        plays.sort_by(|a, b| a.1.cmp(&b.1));
        for w in plays.windows(2) {
            if w[0].1 == w[1].1 {
                return Err(Error::InvalidArgument(format!(
                    "position `{}` listed twice",
                    game.format_position(&w[0].1)
                )));
            }
        }
        for (_, p) in &plays {
            if !game.is_maximal(p) {
                return Err(Error::NotMaximal(game.format_position(p)));
            }
        }
        Ok(Strategy { game, plays })
    }

    pub(crate) fn from_sorted(game: Arc<Game>, plays: Vec<(Scalar, Position)>) -> Strategy {
        debug_assert!(plays.windows(2).all(|w| w[0].1 < w[1].1));
        Strategy { game, plays }
    }

    /// Unit-weight strategy from positions given as move names.
    pub fn from_names(game: Arc<Game>, plays: &[(Scalar, &[&str])]) -> Result<Strategy> {
        let by_name: HashMap<String, usize> = game.moves().iter().enumerate().map(|(i, m)| (m.name(), i)).collect();
        let plays = plays
            .iter()
            .map(|(z, names)| {
                let pos = names
                    .iter()
                    .map(|n| by_name.get(*n).copied().ok_or_else(|| Error::InvalidArgument(format!("unknown move {n}"))))
                    .collect::<Result<Vec<_>>>()?;
                Ok((*z, pos))
            })
            .collect::<Result<Vec<_>>>()?;
        Strategy::new(game, plays)
    }

    pub fn game(&self) -> &Arc<Game> {
        &self.game
    }

    pub fn plays(&self) -> &[(Scalar, Position)] {
        &self.plays
    }

    pub fn len(&self) -> usize {
        self.plays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plays.is_empty()
    }

    pub fn weight_of(&self, pos: &[usize]) -> Option<Scalar> {
        self.plays.binary_search_by(|(_, p)| p.as_slice().cmp(pos)).ok().map(|i| self.plays[i].0)
    }

    pub fn scale(&self, z: Scalar) -> Strategy {
        Strategy { game: self.game.clone(), plays: self.plays.iter().map(|(w, p)| (w * z, p.clone())).collect() }
    }

    /// Same plays with all weights set to one.
    pub fn support(&self) -> Strategy {
        Strategy { game: self.game.clone(), plays: self.plays.iter().map(|(_, p)| (ONE, p.clone())).collect() }
    }

    pub fn trie(&self) -> Trie {
        Trie::from_positions(self.plays.iter().map(|(_, p)| p.as_slice()))
    }

    /// Entry `(v, w)` is the weight of the plays with O-answers `v` and
    /// P-answers `w`.
    pub fn matrix(&self) -> Result<StrategyMatrix> {
        matrix_of_plays(&self.game, self.plays.iter().map(|(z, p)| (*z, p.as_slice())))
    }

    pub fn validate(&self) -> StrategyReport {
        let arena = self.game.trie();
        let own = self.trie();
        StrategyReport {
            determinacy: self.check_determinacy(&arena, &own),
            monotonicity: self.check_monotonicity(&own),
            incoherence: self.check_incoherence(),
        }
    }

    fn check_determinacy(&self, arena: &Trie, own: &Trie) -> Verdict {
        let g = &self.game;
        // Walk the arena from ε, which is a prefix of every strategy.
        let mut stack = vec![(ROOT, Some(ROOT))];
        while let Some((a, s)) = stack.pop() {
            let Some(s) = s else { continue };
            for &(m, a_child) in arena.children(a) {
                if g.move_at(m).owner() != Owner::Opponent {
                    continue;
                }
                let seq = || g.format_position(&arena.sequence(a_child));
                let Some(s_child) = own.child(s, m) else {
                    return Verdict::Fail(format!("no response after `{}`", seq()));
                };
                match own.children(s_child) {
                    [] => {
                        if !own.is_terminal(s_child) {
                            return Verdict::Fail(format!("no response after `{}`", seq()));
                        }
                    }
                    [(n, s_next)] => {
                        let a_next = arena.child(a_child, *n).expect("strategy plays are arena positions");
                        stack.push((a_next, Some(*s_next)));
                    }
                    many => {
                        let names: Vec<String> = many.iter().map(|(n, _)| g.move_at(*n).name()).collect();
                        return Verdict::Fail(format!("responses {} all follow `{}`", names.join(", "), seq()));
                    }
                }
            }
        }
        Verdict::Pass
    }

    fn check_monotonicity(&self, own: &Trie) -> Verdict {
        let g = &self.game;
        let play_moves: Vec<FixedBitSet> = self.plays.iter().map(|(_, p)| move_set(g, p, false)).collect();
        for node in own.node_ids() {
            let Some(m) = own.last_move(node) else { continue };
            if g.move_at(m).owner() != Owner::Player || !g.move_at(m).is_answer() {
                continue;
            }
            let parent = own.parent(node).expect("non-root");
            let before = move_set(g, &own.sequence(parent), false);
            for (t, moves_t) in play_moves.iter().enumerate() {
                if before.is_subset(moves_t) && !moves_t.contains(m) {
                    return Verdict::Fail(format!(
                        "answers of `{}` lie in `{}` but response {} does not",
                        g.format_position(&own.sequence(parent)),
                        g.format_position(&self.plays[t].1),
                        g.move_at(m)
                    ));
                }
            }
        }
        Verdict::Pass
    }

    fn check_incoherence(&self) -> Verdict {
        let limit = config::check_limit();
        if self.plays.len() > limit {
            return Verdict::Skipped(format!("{} plays exceed the limit of {limit}", self.plays.len()));
        }
        let g = &self.game;
        let incoherent = |a: &[usize], b: &[usize]| {
            a.iter().find_map(|&x| b.iter().find(|&&y| g.strictly_incoherent(x, y)).map(|&y| (x, y)))
        };
        let answers: Vec<(Vec<usize>, Vec<usize>)> = self.plays.iter().map(|(_, p)| (g.oans(p), g.pans(p))).collect();
        for (i, (oi, pi)) in answers.iter().enumerate() {
            for (j, (oj, pj)) in answers.iter().enumerate().skip(i + 1) {
                let Some((m, m2)) = incoherent(oi, oj) else { continue };
                if incoherent(pi, pj).is_none() {
                    let upto = |p: &[usize], x: usize| p[..=p.iter().position(|&y| y == x).unwrap()].to_vec();
                    return Verdict::Fail(format!(
                        "`{}` and `{}` end in incoherent answers but their completions `{}` / `{}` give coherent answers {} / {}",
                        g.format_position(&upto(&self.plays[i].1, m)),
                        g.format_position(&upto(&self.plays[j].1, m2)),
                        g.format_position(&self.plays[i].1),
                        g.format_position(&self.plays[j].1),
                        g.label_of(pi),
                        g.label_of(pj)
                    ));
                }
            }
        }
        Verdict::Pass
    }

    pub fn to_json(&self) -> PlaysJson {
        plays_json(&self.game, self.plays.iter().map(|(z, p)| (*z, p.as_slice())))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PlayJson {
    pub weight: [f64; 2],
    pub moves: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PlaysJson {
    pub game: String,
    pub plays: Vec<PlayJson>,
}

fn plays_json<'a>(game: &Game, plays: impl Iterator<Item = (Scalar, &'a [usize])>) -> PlaysJson {
    PlaysJson {
        game: game.shape().to_string(),
        plays: plays.map(|(z, p)| PlayJson { weight: scalar::to_pair(z), moves: game.position_names(p) }).collect(),
    }
}

/// Moves of `seq` as a set; only answers when `answers_only`.
fn move_set(g: &Game, seq: &[usize], answers_only: bool) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(g.moves().len());
    for &m in seq {
        if !answers_only || g.move_at(m).is_answer() {
            set.insert(m);
        }
    }
    set
}

pub(crate) fn matrix_of_plays<'a>(
    game: &Game,
    plays: impl Iterator<Item = (Scalar, &'a [usize])>,
) -> Result<StrategyMatrix> {
    let o = game.clique_index(Owner::Opponent);
    let p = game.clique_index(Owner::Player);
    let mut m = StrategyMatrix::zeros(o.labels(game), p.labels(game));
    let cols = p.cliques().len();
    let mut seen = vec![false; o.cliques().len() * cols];
    for (z, pos) in plays {
        let (Some(r), Some(c)) = (o.of_position(game, pos), p.of_position(game, pos)) else {
            return Err(Error::Internal(format!(
                "answers of `{}` are not a pair of maximal cliques",
                game.format_position(pos)
            )));
        };
        // Plays with the same answers are reorderings of one computation and
        // must agree on their weight.
        if seen[r * cols + c] {
            if !scalar::approx_eq(m.get(r, c), z) {
                return Err(Error::Internal(format!(
                    "plays with answers {} / {} carry different weights",
                    m.row_labels()[r],
                    m.col_labels()[c]
                )));
            }
        } else {
            seen[r * cols + c] = true;
            m.set(r, c, z);
        }
    }
    Ok(m)
}

/// A morphism `source ⊸ target`: a formal sum of deterministic strategies on
/// the same arena.
#[derive(Debug, Clone)]
pub struct Morphism {
    source: Arc<Game>,
    target: Arc<Game>,
    arena: Arc<Game>,
    summands: Vec<(Scalar, Strategy)>,
}

impl Morphism {
    pub fn zero(source: Arc<Game>, target: Arc<Game>) -> Morphism {
        let arena = Arc::new(lollipop(&source, &target));
        Morphism { source, target, arena, summands: Vec::new() }
    }

    /// Wrap a strategy that lives on `source ⊸ target`.
    pub fn from_strategy(source: Arc<Game>, target: Arc<Game>, s: Strategy) -> Result<Morphism> {
        let mut m = Morphism::zero(source, target);
        if !same_game(&m.arena, s.game()) {
            return Err(Error::GameMismatch(format!(
                "strategy lives on {}, expected {}",
                s.game().shape(),
                m.arena.shape()
            )));
        }
        m.arena = s.game().clone();
        m.summands.push((ONE, s));
        Ok(m)
    }

    pub(crate) fn from_parts(
        source: Arc<Game>,
        target: Arc<Game>,
        arena: Arc<Game>,
        summands: Vec<(Scalar, Strategy)>,
    ) -> Morphism {
        Morphism { source, target, arena, summands }
    }

    pub fn source(&self) -> &Arc<Game> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Game> {
        &self.target
    }

    pub fn arena(&self) -> &Arc<Game> {
        &self.arena
    }

    pub fn summands(&self) -> &[(Scalar, Strategy)] {
        &self.summands
    }

    /// The single strategy, with its coefficient folded in, when the sum has
    /// exactly one summand.
    pub fn as_deterministic(&self) -> Option<Strategy> {
        match self.summands.as_slice() {
            [(z, s)] => Some(s.scale(*z)),
            _ => None,
        }
    }

    fn check_same(&self, other: &Morphism) -> Result<()> {
        if same_game(&self.source, &other.source) && same_game(&self.target, &other.target) {
            Ok(())
        } else {
            Err(Error::GameMismatch(format!("{} vs {}", self.arena.shape(), other.arena.shape())))
        }
    }

    pub fn scale(&self, z: Scalar) -> Morphism {
        let mut out = self.clone();
        for (w, _) in &mut out.summands {
            *w *= z;
        }
        out
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.summands.extend(other.summands.iter().cloned());
        Ok(out)
    }

    /// Weighted positions with equal positions merged and negligible weights
    /// dropped.
    pub fn flatten(&self) -> Vec<(Scalar, Position)> {
        let mut acc: BTreeMap<&Position, Scalar> = BTreeMap::new();
        for (z, s) in &self.summands {
            for (w, p) in s.plays() {
                *acc.entry(p).or_insert(scalar::ZERO) += z * w;
            }
        }
        acc.into_iter().filter(|(_, z)| !scalar::is_zero(*z)).map(|(p, z)| (z, p.clone())).collect()
    }

    /// `Σ zᵢ M(σᵢ)`.
    pub fn matrix(&self) -> Result<StrategyMatrix> {
        let mut acc = matrix_of_plays(&self.arena, std::iter::empty())?;
        for (z, s) in &self.summands {
            acc = acc.add(&s.matrix()?.scale(*z))?;
        }
        Ok(acc)
    }

    pub fn equivalent(&self, other: &Morphism) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.matrix()?.approx_eq(&other.matrix()?))
    }

    /// Validity of every summand.
    pub fn validate(&self) -> Vec<StrategyReport> {
        self.summands.iter().map(|(_, s)| s.validate()).collect()
    }

    pub fn to_json(&self) -> PlaysJson {
        let flat = self.flatten();
        plays_json(&self.arena, flat.iter().map(|(z, p)| (*z, p.as_slice())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::bool_game;
    use crate::scalar::half_one_plus_i;

    fn bb() -> Arc<Game> {
        Arc::new(lollipop(&bool_game(), &bool_game()))
    }

    fn not() -> Strategy {
        Strategy::from_names(
            bb(),
            &[(ONE, &["⊥_R", "⊥_L", "tt_L", "ff_R"]), (ONE, &["⊥_R", "⊥_L", "ff_L", "tt_R"])],
        )
        .unwrap()
    }

    fn id() -> Strategy {
        Strategy::from_names(
            bb(),
            &[(ONE, &["⊥_R", "⊥_L", "tt_L", "tt_R"]), (ONE, &["⊥_R", "⊥_L", "ff_L", "ff_R"])],
        )
        .unwrap()
    }

    #[test]
    fn not_is_valid() {
        let r = not().validate();
        assert!(r.verdicts().iter().all(|(_, v)| v.is_pass()), "{r:?}");
        assert!(not().matrix().unwrap().approx_eq_rows(&[vec![scalar::ZERO, ONE], vec![ONE, scalar::ZERO]]));
    }

    #[test]
    fn constant_tt_breaks_incoherence() {
        let s = Strategy::from_names(
            bb(),
            &[(ONE, &["⊥_R", "⊥_L", "ff_L", "tt_R"]), (ONE, &["⊥_R", "⊥_L", "tt_L", "tt_R"])],
        )
        .unwrap();
        let r = s.validate();
        assert!(r.determinacy.is_pass() && r.monotonicity.is_pass());
        assert!(matches!(r.incoherence, Verdict::Fail(_)));
    }

    #[test]
    fn empty_strategy_is_not_receptive() {
        let s = Strategy::new(bb(), vec![]).unwrap();
        match s.validate().determinacy {
            Verdict::Fail(msg) => assert!(msg.contains("⊥_R"), "{msg}"),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn two_responses_break_determinacy() {
        let g = bb();
        let mut plays: Vec<(Scalar, Position)> = id().plays().to_vec();
        plays.extend(not().plays().iter().cloned());
        let s = Strategy::new(g, plays).unwrap();
        assert!(matches!(s.validate().determinacy, Verdict::Fail(_)));
    }

    #[test]
    fn rejects_non_maximal() {
        let g = bb();
        assert!(matches!(Strategy::new(g, vec![(ONE, vec![0])]), Err(Error::NotMaximal(_))));
    }

    #[test]
    fn sums_and_scaling() {
        let b = Arc::new(bool_game());
        let idm = Morphism::from_strategy(b.clone(), b.clone(), id()).unwrap();
        let notm = Morphism::from_strategy(b.clone(), b.clone(), not()).unwrap();
        let z = half_one_plus_i();
        let sq = idm.scale(z).add(&notm.scale(z.conj())).unwrap();
        let m = sq.matrix().unwrap();
        assert!(m.approx_eq_rows(&[vec![z, z.conj()], vec![z.conj(), z]]));
        assert!(m.is_unitary());
        let cancel = idm.add(&idm.scale(-ONE)).unwrap();
        assert!(cancel.flatten().is_empty());
        assert!(idm.scale(ONE).equivalent(&idm).unwrap());
        assert!(!idm.equivalent(&notm).unwrap());
        assert!(idm.add(&notm.scale(scalar::ZERO)).unwrap().equivalent(&idm).unwrap());
    }
}
