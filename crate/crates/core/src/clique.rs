//! Maximal cliques, computed along the shape of a game.
//!
//! Cliques of `G & H` come from one component and remember which one, so
//! that an empty clique of `G` and an empty clique of `H` are different basis
//! vectors. Cliques of `G ⊕ H` also come from one branch; P-cliques carry
//! `l`/`r` and O-cliques with equal answers are identified, so `1 ⊕ 1` has a
//! single O-clique. Games whose moves do not follow their shape fall back to
//! plain enumeration over the coherence graph.

use std::collections::{BTreeMap, HashMap};

use crate::game::{CliqueLabel, Game, Kind, Move, MoveLabel, Owner, Shape, Tag};

/// A branch choice: the address of a `&` or `⊕` node and the side taken.
pub type Side = (Vec<Tag>, Tag);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clique {
    answers: Vec<usize>,
    /// Components of `&` nodes this clique lives in.
    with_sides: Vec<Side>,
    /// Branch choices the clique can arise from.
    origins: Vec<Vec<Side>>,
    owner: Owner,
}

impl Clique {
    pub fn answers(&self) -> &[usize] {
        &self.answers
    }

    pub fn with_sides(&self) -> &[Side] {
        &self.with_sides
    }

    pub fn contains(&self, m: usize) -> bool {
        self.answers.binary_search(&m).is_ok()
    }

    /// Answers followed by one marker move `&1`/`&2` per `&` component.
    pub fn label(&self, g: &Game) -> CliqueLabel {
        let mut moves: Vec<Move> = self.answers.iter().map(|&i| g.move_at(i).clone()).collect();
        moves.extend(self.with_sides.iter().map(|(p, t)| side_marker(p, *t, self.owner)));
        CliqueLabel::new(moves)
    }

    /// Some origin of `self` and some origin of `other` agree with each
    /// other and with `sides`.
    pub fn compatible(&self, other: &Clique, sides: &[Side]) -> bool {
        self.origins.iter().any(|a| other.origins.iter().any(|b| !conflict(&[a, b, sides])))
    }
}

fn side_marker(path: &[Tag], t: Tag, owner: Owner) -> Move {
    let mut path = path.to_vec();
    path.push(Tag::Proto);
    let base = if t == Tag::Left { "&1" } else { "&2" };
    Move { path, base: base.into(), label: MoveLabel { owner, kind: Kind::Answer } }
}

fn conflict(sets: &[&[Side]]) -> bool {
    let mut seen: BTreeMap<&[Tag], Tag> = BTreeMap::new();
    for (p, t) in sets.iter().flat_map(|s| s.iter()) {
        if let Some(prev) = seen.insert(p.as_slice(), *t) {
            if prev != *t {
                return true;
            }
        }
    }
    false
}

pub(crate) fn has_moves(s: &Shape) -> bool {
    match s {
        Shape::One => false,
        Shape::Bool | Shape::Oplus(..) => true,
        Shape::Tensor(a, b) | Shape::With(a, b) => has_moves(a) || has_moves(b),
        Shape::Lolli(_, b) => has_moves(b),
    }
}

fn move_count(s: &Shape) -> usize {
    match s {
        Shape::One => 0,
        Shape::Bool => 3,
        Shape::Tensor(a, b) | Shape::With(a, b) => move_count(a) + move_count(b),
        Shape::Lolli(a, b) => if has_moves(b) { move_count(a) + move_count(b) } else { 0 },
        Shape::Oplus(a, b) => 3 + move_count(a) + move_count(b),
    }
}

struct Partial {
    answers: Vec<usize>,
    keep: Vec<Side>,
    origin: Vec<Side>,
}

fn product(xs: Vec<Partial>, ys: Vec<Partial>) -> Vec<Partial> {
    let mut out = Vec::with_capacity(xs.len() * ys.len());
    for x in &xs {
        for y in &ys {
            out.push(Partial {
                answers: x.answers.iter().chain(&y.answers).copied().collect(),
                keep: x.keep.iter().chain(&y.keep).cloned().collect(),
                origin: x.origin.iter().chain(&y.origin).cloned().collect(),
            });
        }
    }
    out
}

fn with_side(mut xs: Vec<Partial>, side: Side, keep: bool) -> Vec<Partial> {
    for x in &mut xs {
        if keep {
            x.keep.push(side.clone());
        }
        x.origin.push(side.clone());
    }
    xs
}

fn child(path: &[Tag], t: Tag) -> Vec<Tag> {
    let mut p = path.to_vec();
    p.push(t);
    p
}

/// Cliques of the sub-game at `path` whose answers are `local`-owned in
/// that sub-game.
fn structural(g: &Game, s: &Shape, path: &[Tag], local: Owner) -> Option<Vec<Partial>> {
    let unit = || vec![Partial { answers: Vec::new(), keep: Vec::new(), origin: Vec::new() }];
    Some(match s {
        Shape::One => unit(),
        Shape::Bool => match local {
            Owner::Opponent => unit(),
            Owner::Player => ["ff", "tt"]
                .iter()
                .map(|b| Some(Partial { answers: vec![g.find_move(path, b)?], keep: Vec::new(), origin: Vec::new() }))
                .collect::<Option<_>>()?,
        },
        Shape::Tensor(a, b) => {
            product(structural(g, a, &child(path, Tag::Left), local)?, structural(g, b, &child(path, Tag::Right), local)?)
        }
        Shape::Lolli(a, b) => {
            if !has_moves(b) {
                unit()
            } else {
                product(
                    structural(g, a, &child(path, Tag::Left), local.flip())?,
                    structural(g, b, &child(path, Tag::Right), local)?,
                )
            }
        }
        Shape::With(a, b) => match (has_moves(a), has_moves(b)) {
            (true, true) => {
                let mut l = with_side(structural(g, a, &child(path, Tag::Left), local)?, (path.to_vec(), Tag::Left), true);
                l.extend(with_side(structural(g, b, &child(path, Tag::Right), local)?, (path.to_vec(), Tag::Right), true));
                l
            }
            (true, false) => structural(g, a, &child(path, Tag::Left), local)?,
            (false, true) => structural(g, b, &child(path, Tag::Right), local)?,
            (false, false) => unit(),
        },
        Shape::Oplus(a, b) => {
            let proto = child(path, Tag::Proto);
            let mut out = Vec::new();
            for (t, sub, tag) in [(Tag::Left, a, "l"), (Tag::Right, b, "r")] {
                let mut xs = with_side(structural(g, sub, &child(path, t), local)?, (path.to_vec(), t), false);
                if local == Owner::Player {
                    let m = g.find_move(&proto, tag)?;
                    for x in &mut xs {
                        x.answers.push(m);
                    }
                }
                out.extend(xs);
            }
            out
        }
    })
}

fn bron_kerbosch(g: &Game, r: Vec<usize>, mut p: Vec<usize>, mut x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    while let Some(v) = p.pop() {
        let mut r2 = r.clone();
        r2.push(v);
        let p2 = p.iter().copied().filter(|&u| g.coherent(u, v)).collect();
        let x2 = x.iter().copied().filter(|&u| g.coherent(u, v)).collect();
        bron_kerbosch(g, r2, p2, x2, out);
        x.push(v);
    }
}

/// Maximal cliques of the coherence graph among `owner`'s answers.
pub fn coherence_cliques(g: &Game, owner: Owner) -> Vec<Vec<usize>> {
    let answers: Vec<usize> =
        (0..g.moves().len()).filter(|&i| g.move_at(i).is_answer() && g.move_at(i).owner() == owner).collect();
    let mut out = Vec::new();
    bron_kerbosch(g, Vec::new(), answers, Vec::new(), &mut out);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn follows_shape(g: &Game) -> bool {
    move_count(g.shape()) == g.moves().len()
}

pub(crate) fn maximal_cliques(g: &Game, owner: Owner) -> Vec<Clique> {
    let parts = if follows_shape(g) { structural(g, g.shape(), &[], owner) } else { None };
    let Some(parts) = parts else {
        return coherence_cliques(g, owner)
            .into_iter()
            .map(|answers| Clique { answers, with_sides: Vec::new(), origins: vec![Vec::new()], owner })
            .collect();
    };
    let mut grouped: BTreeMap<(Vec<usize>, Vec<Side>), Vec<Vec<Side>>> = BTreeMap::new();
    for mut p in parts {
        p.answers.sort_unstable();
        p.keep.sort();
        p.origin.sort();
        grouped.entry((p.answers, p.keep)).or_default().push(p.origin);
    }
    let mut out: Vec<(CliqueLabel, Clique)> = grouped
        .into_iter()
        .map(|((answers, with_sides), origins)| {
            let c = Clique { answers, with_sides, origins, owner };
            (c.label(g), c)
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter().map(|(_, c)| c).collect()
}

/// Branch choices made by the moves of `pos`.
pub fn sides_of(g: &Game, pos: &[usize]) -> Vec<Side> {
    let mut out = Vec::new();
    for &i in pos {
        let m = g.move_at(i);
        for (k, &t) in m.path.iter().enumerate() {
            let prefix = &m.path[..k];
            let node = g.shape().at(prefix);
            match (t, node) {
                (Tag::Left | Tag::Right, Some(Shape::With(..) | Shape::Oplus(..))) => out.push((prefix.to_vec(), t)),
                (Tag::Proto, Some(Shape::Oplus(..))) if m.base == "l" => out.push((prefix.to_vec(), Tag::Left)),
                (Tag::Proto, Some(Shape::Oplus(..))) if m.base == "r" => out.push((prefix.to_vec(), Tag::Right)),
                _ => {}
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The maximal cliques of one polarity with a lookup from positions.
pub struct CliqueIndex {
    owner: Owner,
    cliques: Vec<Clique>,
    lookup: HashMap<(Vec<usize>, Vec<Side>), usize>,
}

impl CliqueIndex {
    pub fn new(g: &Game, owner: Owner) -> Self {
        let cliques = maximal_cliques(g, owner);
        let lookup = cliques.iter().enumerate().map(|(i, c)| ((c.answers.clone(), c.with_sides.clone()), i)).collect();
        CliqueIndex { owner, cliques, lookup }
    }

    pub fn cliques(&self) -> &[Clique] {
        &self.cliques
    }

    pub fn labels(&self, g: &Game) -> Vec<CliqueLabel> {
        self.cliques.iter().map(|c| c.label(g)).collect()
    }

    /// Index of the clique formed by the answers of a maximal position.
    pub fn of_position(&self, g: &Game, pos: &[usize]) -> Option<usize> {
        let with_sides: Vec<Side> = sides_of(g, pos)
            .into_iter()
            .filter(|s| self.cliques.iter().any(|c| c.with_sides.contains(s)))
            .collect();
        self.lookup.get(&(g.answers_of(pos, self.owner), with_sides)).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::*;

    fn labels(g: &Game, owner: Owner) -> Vec<String> {
        CliqueIndex::new(g, owner).labels(g).iter().map(|c| c.to_string()).collect()
    }

    #[test]
    fn with_keeps_components_apart() {
        let g = with(&bool_game(), &bool_game());
        assert_eq!(labels(&g, Owner::Opponent), ["{&1_P}", "{&2_P}"]);
        assert_eq!(labels(&g, Owner::Player), ["{&1_P,ff_L}", "{&1_P,tt_L}", "{&2_P,ff_R}", "{&2_P,tt_R}"]);
        assert_eq!(g.hilbert_dims(), (2, 4));
    }

    #[test]
    fn sum_merges_empty_opponent_cliques() {
        assert_eq!(labels(&qbit(), Owner::Opponent), ["∅"]);
        assert_eq!(labels(&qbit(), Owner::Player), ["{l_P}", "{r_P}"]);
        let g = oplus(&lollipop(&bool_game(), &bool_game()), &unit_game());
        assert_eq!(labels(&g, Owner::Opponent), ["∅", "{ff_LL}", "{tt_LL}"]);
    }

    #[test]
    fn structural_cliques_are_coherent() {
        let b = bool_game();
        let games = [
            tensor(&b, &oplus(&b, &unit_game())),
            lollipop(&with(&b, &b), &oplus(&b, &b)),
            with(&lollipop(&b, &b), &tensor(&b, &b)),
        ];
        for g in &games {
            for owner in [Owner::Opponent, Owner::Player] {
                for c in CliqueIndex::new(g, owner).cliques() {
                    for &x in c.answers() {
                        assert!(c.answers().iter().all(|&y| g.coherent(x, y)), "{}", g.shape());
                    }
                }
            }
        }
    }

    #[test]
    fn coherence_cliques_agree_without_sums() {
        let b = bool_game();
        let g = lollipop(&tensor(&b, &b), &b);
        for owner in [Owner::Opponent, Owner::Player] {
            let raw = coherence_cliques(&g, owner);
            let ours: Vec<Vec<usize>> = maximal_cliques(&g, owner).into_iter().map(|c| c.answers).collect();
            let mut sorted = ours.clone();
            sorted.sort();
            assert_eq!(raw, sorted);
        }
    }
}
