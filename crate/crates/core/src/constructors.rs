//! Base games and the four connectives.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::game::{Game, Move, MoveLabel, Owner, Position, Shape, Tag};

pub fn unit_game() -> Game {
    Game::from_parts(Shape::One, Vec::new(), BTreeSet::new(), vec![Vec::new()])
}

pub fn bool_game() -> Game {
    let moves = vec![Move::new("ff", MoveLabel::PA), Move::new("tt", MoveLabel::PA), Move::new("⊥", MoveLabel::OQ)];
    Game::from_parts(Shape::Bool, moves, BTreeSet::new(), vec![vec![2, 0], vec![2, 1]])
}

/// `1 ⊕ 1`.
pub fn qbit() -> Game {
    oplus(&unit_game(), &unit_game())
}

/// Right-nested sum of `n` copies of `1`.
pub fn point_game(n: usize) -> Result<Game> {
    if n == 0 {
        return Err(Error::InvalidArgument("point game needs n ≥ 1".into()));
    }
    let mut g = unit_game();
    for _ in 1..n {
        g = oplus(&unit_game(), &g);
    }
    Ok(g)
}

/// Right-nested tensor of `n` copies of `g`.
pub fn power(g: &Game, n: usize) -> Result<Game> {
    if n == 0 {
        return Err(Error::InvalidArgument("power needs exponent ≥ 1".into()));
    }
    let mut acc = g.clone();
    for _ in 1..n {
        acc = tensor(g, &acc);
    }
    Ok(acc)
}

pub fn bool_power(n: usize) -> Result<Game> {
    power(&bool_game(), n)
}

/// Moves of `g` and `h` tagged `L` and `R`; `h`'s indices are offset by
/// `g.moves().len()`.
fn tagged_union(g: &Game, h: &Game, flip_left: bool) -> Vec<Move> {
    let left = g.moves.iter().map(|m| {
        let m = m.prefixed(Tag::Left);
        if flip_left { m.flipped() } else { m }
    });
    left.chain(h.moves.iter().map(|m| m.prefixed(Tag::Right))).collect()
}

fn component_coherence(g: &Game, h: &Game) -> BTreeSet<(usize, usize)> {
    let off = g.moves.len();
    g.coherence.iter().copied().chain(h.coherence.iter().map(|&(a, b)| (a + off, b + off))).collect()
}

fn cross_coherence(moves: &[Move], off: usize, coh: &mut BTreeSet<(usize, usize)>) {
    for a in 0..off {
        for b in off..moves.len() {
            if moves[a].is_answer() && moves[a].label == moves[b].label {
                coh.insert((a, b));
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Switching {
    /// Only O may change component.
    Tensor,
    /// Only P may change component; play starts and ends on the right.
    Lolli,
}

struct Interleaver<'a> {
    moves: &'a [Move],
    rule: Switching,
    out: Vec<Position>,
}

impl Interleaver<'_> {
    fn run(&mut self, p: &[usize], q: &[usize], seq: &mut Vec<usize>, last: Option<usize>) {
        if p.is_empty() && q.is_empty() {
            if self.rule == Switching::Lolli && last == Some(0) {
                return;
            }
            self.out.push(seq.clone());
            return;
        }
        let want = if seq.len() % 2 == 0 { Owner::Opponent } else { Owner::Player };
        for side in 0..2 {
            let (src, rest_p, rest_q) = if side == 0 {
                let Some((&m, rest)) = p.split_first() else { continue };
                (m, rest, q)
            } else {
                let Some((&m, rest)) = q.split_first() else { continue };
                (m, p, rest)
            };
            let owner = self.moves[src].owner();
            if owner != want {
                continue;
            }
            let allowed = match (self.rule, last) {
                (Switching::Lolli, None) => side == 1,
                (_, None) => true,
                (Switching::Tensor, Some(l)) => owner == Owner::Opponent || l == side,
                (Switching::Lolli, Some(l)) => owner == Owner::Player || l == side,
            };
            if !allowed {
                continue;
            }
            seq.push(src);
            self.run(rest_p, rest_q, seq, Some(side));
            seq.pop();
        }
    }
}

fn interleavings(g: &Game, h: &Game, moves: &[Move], rule: Switching) -> Vec<Position> {
    let off = g.moves.len();
    let mut it = Interleaver { moves, rule, out: Vec::new() };
    let mut seq = Vec::new();
    for p in &g.positions {
        for q in &h.positions {
            let q: Vec<usize> = q.iter().map(|&j| j + off).collect();
            it.run(p, &q, &mut seq, None);
        }
    }
    it.out
}

pub fn tensor(g: &Game, h: &Game) -> Game {
    let moves = tagged_union(g, h, false);
    let mut coh = component_coherence(g, h);
    cross_coherence(&moves, g.moves.len(), &mut coh);
    let positions = interleavings(g, h, &moves, Switching::Tensor);
    Game::from_parts(Shape::Tensor(Box::new(g.shape.clone()), Box::new(h.shape.clone())), moves, coh, positions)
}

/// `g ⊸ h`. When `h` has no moves the result is the empty game.
pub fn lollipop(g: &Game, h: &Game) -> Game {
    let shape = Shape::Lolli(Box::new(g.shape.clone()), Box::new(h.shape.clone()));
    if h.is_empty() {
        return Game::from_parts(shape, Vec::new(), BTreeSet::new(), vec![Vec::new()]);
    }
    let moves = tagged_union(g, h, true);
    let mut coh = component_coherence(g, h);
    cross_coherence(&moves, g.moves.len(), &mut coh);
    let positions = interleavings(g, h, &moves, Switching::Lolli);
    Game::from_parts(shape, moves, coh, positions)
}

/// `g & h`. The empty position is dropped when the other side has moves, so
/// that positions stay prefix-maximal.
pub fn with(g: &Game, h: &Game) -> Game {
    let moves = tagged_union(g, h, false);
    let coh = component_coherence(g, h);
    let off = g.moves.len();
    let mut positions: Vec<Position> = g.positions.clone();
    positions.extend(h.positions.iter().map(|q| q.iter().map(|&j| j + off).collect()));
    if positions.iter().any(|p| !p.is_empty()) {
        positions.retain(|p| !p.is_empty());
    }
    Game::from_parts(Shape::With(Box::new(g.shape.clone()), Box::new(h.shape.clone())), moves, coh, positions)
}

pub fn oplus(g: &Game, h: &Game) -> Game {
    let mut moves = vec![
        Move { path: vec![Tag::Proto], base: "l".into(), label: MoveLabel::PA },
        Move { path: vec![Tag::Proto], base: "r".into(), label: MoveLabel::PA },
        Move { path: vec![Tag::Proto], base: "⊥".into(), label: MoveLabel::OQ },
    ];
    let (l, r, q) = (0, 1, 2);
    let base = moves.len();
    moves.extend(tagged_union(g, h, false));
    let off_h = base + g.moves.len();
    let mut coh: BTreeSet<(usize, usize)> =
        component_coherence(g, h).into_iter().map(|(a, b)| (a + base, b + base)).collect();
    for (i, m) in moves.iter().enumerate().skip(base) {
        if m.label == MoveLabel::PA {
            coh.insert((if i < off_h { l } else { r }, i));
        }
    }
    let mut positions = Vec::new();
    for p in &g.positions {
        let mut s = vec![q, l];
        s.extend(p.iter().map(|&i| i + base));
        positions.push(s);
    }
    for p in &h.positions {
        let mut s = vec![q, r];
        s.extend(p.iter().map(|&i| i + off_h));
        positions.push(s);
    }
    Game::from_parts(Shape::Oplus(Box::new(g.shape.clone()), Box::new(h.shape.clone())), moves, coh, positions)
}

/// Build the game denoted by a shape.
pub fn game_of_shape(shape: &Shape) -> Game {
    match shape {
        Shape::One => unit_game(),
        Shape::Bool => bool_game(),
        Shape::Tensor(a, b) => tensor(&game_of_shape(a), &game_of_shape(b)),
        Shape::Lolli(a, b) => lollipop(&game_of_shape(a), &game_of_shape(b)),
        Shape::With(a, b) => with(&game_of_shape(a), &game_of_shape(b)),
        Shape::Oplus(a, b) => oplus(&game_of_shape(a), &game_of_shape(b)),
    }
}

/// Subsequence of `pos` lying under the address `prefix`, re-indexed into
/// `component`, whose moves are those of `game` under `prefix` with the
/// prefix removed.
pub fn restrict(game: &Game, pos: &[usize], prefix: &[Tag], component: &Game) -> Vec<usize> {
    pos.iter()
        .filter_map(|&i| {
            let m = &game.moves[i];
            if m.path.starts_with(prefix) {
                component.find_move(&m.path[prefix.len()..], &m.base)
            } else {
                None
            }
        })
        .collect()
}
