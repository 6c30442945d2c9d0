//! Identity, symmetry, associativity, projections, injections and
//! distributivity witnesses, plus tensor, pairing, copairing and currying of
//! morphisms.

use std::sync::Arc;

use crate::constructors::{game_of_shape, lollipop, oplus, tensor, with};
use crate::copycat::{copycat, rebase, retag, Case};
use crate::error::{Error, Result};
use crate::game::{Game, Position, Shape, Tag};
use crate::scalar::{Scalar, ONE};
use crate::strategy::{Morphism, Strategy};
use crate::trie::{Trie, ROOT};

use Tag::{Left as L, Right as R};

fn copycat_morphism(source: Game, target: Game, cases: &[Case]) -> Result<Morphism> {
    let arena = Arc::new(lollipop(&source, &target));
    let s = copycat(arena.clone(), cases)?;
    Ok(Morphism::from_parts(Arc::new(source), Arc::new(target), arena, vec![(ONE, s)]))
}

pub fn identity(g: &Game) -> Result<Morphism> {
    copycat_morphism(g.clone(), g.clone(), &[Case::new(&[], &[(&[L], &[R])])])
}

/// `g ⊗ h ⊸ h ⊗ g`.
pub fn twist_tensor(g: &Game, h: &Game) -> Result<Morphism> {
    copycat_morphism(tensor(g, h), tensor(h, g), &[Case::new(&[], &[(&[L, L], &[R, R]), (&[L, R], &[R, L])])])
}

/// `g1 ⊗ (g2 ⊗ g3) ⊸ (g1 ⊗ g2) ⊗ g3`.
pub fn assoc_tensor(g1: &Game, g2: &Game, g3: &Game) -> Result<Morphism> {
    copycat_morphism(
        tensor(g1, &tensor(g2, g3)),
        tensor(&tensor(g1, g2), g3),
        &[Case::new(&[], &[(&[L, L], &[R, L, L]), (&[L, R, L], &[R, L, R]), (&[L, R, R], &[R, R])])],
    )
}

/// `(g1 ⊗ g2) ⊗ g3 ⊸ g1 ⊗ (g2 ⊗ g3)`.
pub fn assoc_tensor_inv(g1: &Game, g2: &Game, g3: &Game) -> Result<Morphism> {
    copycat_morphism(
        tensor(&tensor(g1, g2), g3),
        tensor(g1, &tensor(g2, g3)),
        &[Case::new(&[], &[(&[L, L, L], &[R, L]), (&[L, L, R], &[R, R, L]), (&[L, R], &[R, R, R])])],
    )
}

/// `(g ⊸ h) ⊗ g ⊸ h`.
pub fn app(g: &Game, h: &Game) -> Result<Morphism> {
    copycat_morphism(
        tensor(&lollipop(g, h), g),
        h.clone(),
        &[Case::new(&[], &[(&[L, L, L], &[L, R]), (&[L, L, R], &[R])])],
    )
}

/// `g & h ⊸ g`.
pub fn proj1(g: &Game, h: &Game) -> Result<Morphism> {
    copycat_morphism(with(g, h), g.clone(), &[Case::new(&[], &[(&[L, L], &[R])])])
}

/// `g & h ⊸ h`.
pub fn proj2(g: &Game, h: &Game) -> Result<Morphism> {
    copycat_morphism(with(g, h), h.clone(), &[Case::new(&[], &[(&[L, R], &[R])])])
}

/// `g ⊸ g ⊕ h`.
pub fn injl(g: &Game, h: &Game) -> Result<Morphism> {
    copycat_morphism(g.clone(), oplus(g, h), &[Case::new(&[(&[R], L)], &[(&[L], &[R, L])])])
}

/// `h ⊸ g ⊕ h`.
pub fn injr(g: &Game, h: &Game) -> Result<Morphism> {
    copycat_morphism(h.clone(), oplus(g, h), &[Case::new(&[(&[R], R)], &[(&[L], &[R, R])])])
}

pub fn twist_with(g: &Game, h: &Game) -> Result<Morphism> {
    copycat_morphism(with(g, h), with(h, g), &[Case::new(&[], &[(&[L, L], &[R, R]), (&[L, R], &[R, L])])])
}

pub fn assoc_with(g1: &Game, g2: &Game, g3: &Game) -> Result<Morphism> {
    copycat_morphism(
        with(g1, &with(g2, g3)),
        with(&with(g1, g2), g3),
        &[Case::new(&[], &[(&[L, L], &[R, L, L]), (&[L, R, L], &[R, L, R]), (&[L, R, R], &[R, R])])],
    )
}

pub fn assoc_with_inv(g1: &Game, g2: &Game, g3: &Game) -> Result<Morphism> {
    copycat_morphism(
        with(&with(g1, g2), g3),
        with(g1, &with(g2, g3)),
        &[Case::new(&[], &[(&[L, L, L], &[R, L]), (&[L, L, R], &[R, R, L]), (&[L, R], &[R, R, R])])],
    )
}

/// `g ⊕ h ⊸ h ⊕ g`, swapping the protocol answer.
pub fn twist_oplus(g: &Game, h: &Game) -> Result<Morphism> {
    copycat_morphism(
        oplus(g, h),
        oplus(h, g),
        &[
            Case::new(&[(&[L], L), (&[R], R)], &[(&[L, L], &[R, R])]),
            Case::new(&[(&[L], R), (&[R], L)], &[(&[L, R], &[R, L])]),
        ],
    )
}

/// `g1 ⊕ (g2 ⊕ g3) ⊸ (g1 ⊕ g2) ⊕ g3`.
pub fn assoc_oplus(g1: &Game, g2: &Game, g3: &Game) -> Result<Morphism> {
    copycat_morphism(
        oplus(g1, &oplus(g2, g3)),
        oplus(&oplus(g1, g2), g3),
        &[
            Case::new(&[(&[L], L), (&[R], L), (&[R, L], L)], &[(&[L, L], &[R, L, L])]),
            Case::new(&[(&[L], R), (&[L, R], L), (&[R], L), (&[R, L], R)], &[(&[L, R, L], &[R, L, R])]),
            Case::new(&[(&[L], R), (&[L, R], R), (&[R], R)], &[(&[L, R, R], &[R, R])]),
        ],
    )
}

/// `(g1 ⊕ g2) ⊕ g3 ⊸ g1 ⊕ (g2 ⊕ g3)`.
pub fn assoc_oplus_inv(g1: &Game, g2: &Game, g3: &Game) -> Result<Morphism> {
    copycat_morphism(
        oplus(&oplus(g1, g2), g3),
        oplus(g1, &oplus(g2, g3)),
        &[
            Case::new(&[(&[L], L), (&[L, L], L), (&[R], L)], &[(&[L, L, L], &[R, L])]),
            Case::new(&[(&[L], L), (&[L, L], R), (&[R], R), (&[R, R], L)], &[(&[L, L, R], &[R, R, L])]),
            Case::new(&[(&[L], R), (&[R], R), (&[R, R], R)], &[(&[L, R], &[R, R, R])]),
        ],
    )
}

/// `g1 ⊗ (g2 ⊕ g3) ⊸ (g1 ⊗ g2) ⊕ (g1 ⊗ g3)`.
pub fn dist(g1: &Game, g2: &Game, g3: &Game) -> Result<Morphism> {
    copycat_morphism(
        tensor(g1, &oplus(g2, g3)),
        oplus(&tensor(g1, g2), &tensor(g1, g3)),
        &[
            Case::new(&[(&[L, R], L), (&[R], L)], &[(&[L, L], &[R, L, L]), (&[L, R, L], &[R, L, R])]),
            Case::new(&[(&[L, R], R), (&[R], R)], &[(&[L, L], &[R, R, L]), (&[L, R, R], &[R, R, R])]),
        ],
    )
}

/// `(g1 ⊗ g2) ⊕ (g1 ⊗ g3) ⊸ g1 ⊗ (g2 ⊕ g3)`.
pub fn dist_inv(g1: &Game, g2: &Game, g3: &Game) -> Result<Morphism> {
    copycat_morphism(
        oplus(&tensor(g1, g2), &tensor(g1, g3)),
        tensor(g1, &oplus(g2, g3)),
        &[
            Case::new(&[(&[L], L), (&[R, R], L)], &[(&[L, L, L], &[R, L]), (&[L, L, R], &[R, R, L])]),
            Case::new(&[(&[L], R), (&[R, R], R)], &[(&[L, R, L], &[R, L]), (&[L, R, R], &[R, R, R])]),
        ],
    )
}

/// `(g2 ⊕ g3) ⊗ g1 ⊸ (g2 ⊗ g1) ⊕ (g3 ⊗ g1)`.
pub fn dist_left(g2: &Game, g3: &Game, g1: &Game) -> Result<Morphism> {
    copycat_morphism(
        tensor(&oplus(g2, g3), g1),
        oplus(&tensor(g2, g1), &tensor(g3, g1)),
        &[
            Case::new(&[(&[L, L], L), (&[R], L)], &[(&[L, L, L], &[R, L, L]), (&[L, R], &[R, L, R])]),
            Case::new(&[(&[L, L], R), (&[R], R)], &[(&[L, L, R], &[R, R, L]), (&[L, R], &[R, R, R])]),
        ],
    )
}

/// `(g2 ⊗ g1) ⊕ (g3 ⊗ g1) ⊸ (g2 ⊕ g3) ⊗ g1`.
pub fn dist_left_inv(g2: &Game, g3: &Game, g1: &Game) -> Result<Morphism> {
    copycat_morphism(
        oplus(&tensor(g2, g1), &tensor(g3, g1)),
        tensor(&oplus(g2, g3), g1),
        &[
            Case::new(&[(&[L], L), (&[R, L], L)], &[(&[L, L, L], &[R, L, L]), (&[L, L, R], &[R, R])]),
            Case::new(&[(&[L], R), (&[R, L], R)], &[(&[L, R, L], &[R, L, R]), (&[L, R, R], &[R, R])]),
        ],
    )
}

/// `g1 ⊸ (g2 & g3) ⊸ (g1 ⊸ g2) & (g1 ⊸ g3)`.
pub fn dist_lolli_with(g1: &Game, g2: &Game, g3: &Game) -> Result<Morphism> {
    copycat_morphism(
        lollipop(g1, &with(g2, g3)),
        with(&lollipop(g1, g2), &lollipop(g1, g3)),
        &[
            Case::new(&[], &[(&[L, L], &[R, L, L]), (&[L, R, L], &[R, L, R])]),
            Case::new(&[], &[(&[L, L], &[R, R, L]), (&[L, R, R], &[R, R, R])]),
        ],
    )
}

/// `(g1 ⊸ g2) & (g1 ⊸ g3) ⊸ g1 ⊸ (g2 & g3)`.
pub fn dist_lolli_with_inv(g1: &Game, g2: &Game, g3: &Game) -> Result<Morphism> {
    copycat_morphism(
        with(&lollipop(g1, g2), &lollipop(g1, g3)),
        lollipop(g1, &with(g2, g3)),
        &[
            Case::new(&[], &[(&[L, L, L], &[R, L]), (&[L, L, R], &[R, R, L])]),
            Case::new(&[], &[(&[L, R, L], &[R, L]), (&[L, R, R], &[R, R, R])]),
        ],
    )
}

/// `g1 ⊗ (g2 & g3) ⊸ (g1 ⊗ g2) & (g1 ⊗ g3)`. There is no inverse.
pub fn dist_tensor_with(g1: &Game, g2: &Game, g3: &Game) -> Result<Morphism> {
    copycat_morphism(
        tensor(g1, &with(g2, g3)),
        with(&tensor(g1, g2), &tensor(g1, g3)),
        &[
            Case::new(&[], &[(&[L, L], &[R, L, L]), (&[L, R, L], &[R, L, R])]),
            Case::new(&[], &[(&[L, L], &[R, R, L]), (&[L, R, R], &[R, R, R])]),
        ],
    )
}

/// The two operand games of a binary game, rebuilt from its shape.
pub fn operands(g: &Game) -> Result<(Game, Game)> {
    match g.shape().children() {
        Some((a, b)) => Ok((game_of_shape(a), game_of_shape(b))),
        None => Err(Error::InvalidArgument(format!("{} is not a compound game", g.shape()))),
    }
}

fn map_plays(
    s: &Strategy,
    arena: &Arc<Game>,
    f: &dyn Fn(&[Tag]) -> Option<Vec<Tag>>,
    wrap: &dyn Fn(Position) -> Position,
) -> Result<Vec<(Scalar, Position)>> {
    s.plays()
        .iter()
        .map(|(z, p)| {
            let q = wrap(retag(s.game(), p, arena, f)?);
            if !arena.is_maximal(&q) {
                return Err(Error::Internal(format!("`{}` is not a maximal position", arena.format_position(&q))));
            }
            Ok((*z, q))
        })
        .collect()
}

/// Currying: a strategy on `g1 ⊗ g2 ⊸ g3` read on `g1 ⊸ (g2 ⊸ g3)`.
pub fn curry(m: &Morphism) -> Result<Morphism> {
    let Shape::Tensor(..) = m.source().shape() else {
        return Err(Error::GameMismatch(format!("curry needs a tensor source, got {}", m.source().shape())));
    };
    let (g1, g2) = operands(m.source())?;
    let target = Arc::new(lollipop(&g2, m.target()));
    let source = Arc::new(g1);
    let arena = Arc::new(lollipop(&source, &target));
    let rules: [(&[Tag], &[Tag]); 3] = [(&[L, L], &[L]), (&[L, R], &[R, L]), (&[R], &[R, R])];
    let f = |p: &[Tag]| rebase(p, &rules);
    let summands = m
        .summands()
        .iter()
        .map(|(z, s)| {
            let plays = map_plays(s, &arena, &f, &|q| q)?;
            Ok((*z, Strategy::new(arena.clone(), plays)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Morphism::from_parts(source, target, arena, summands))
}

/// Pair up the summands of two sums so that each deterministic summand stays
/// a union of one summand from each side: `[zσ, uτ] = ½(z+u)[σ,τ] + ½(z−u)[σ,−τ]`.
fn paired_summands<'a>(a: &'a Morphism, b: &'a Morphism) -> Vec<(Scalar, &'a Strategy, Scalar, &'a Strategy, Scalar)> {
    let n = a.summands().len().max(b.summands().len());
    let mut out = Vec::new();
    if a.summands().is_empty() || b.summands().is_empty() {
        return out;
    }
    if let ([(z, s)], [(u, t)]) = (a.summands(), b.summands()) {
        out.push((ONE, s, *z, t, *u));
        return out;
    }
    for k in 0..n {
        let (z, s) = a.summands().get(k).map_or((Scalar::new(0.0, 0.0), &a.summands()[0].1), |(z, s)| (*z, s));
        let (u, t) = b.summands().get(k).map_or((Scalar::new(0.0, 0.0), &b.summands()[0].1), |(u, t)| (*u, t));
        if z == u {
            out.push((z, s, ONE, t, ONE));
        } else {
            out.push(((z + u) / 2.0, s, ONE, t, ONE));
            out.push(((z - u) / 2.0, s, ONE, t, -ONE));
        }
    }
    out.retain(|(w, ..)| *w != Scalar::new(0.0, 0.0));
    out
}

fn union_strategy(arena: &Arc<Game>, parts: Vec<Vec<(Scalar, Position)>>) -> Result<Strategy> {
    let mut plays: Vec<(Scalar, Position)> = parts.into_iter().flatten().collect();
    if arena.positions().iter().any(|p| !p.is_empty()) {
        plays.retain(|(_, p)| !p.is_empty());
    }
    Strategy::new(arena.clone(), plays)
}

/// `⟨σ, τ⟩ : k ⊸ g & h` from `σ : k ⊸ g` and `τ : k ⊸ h`.
pub fn pairing(a: &Morphism, b: &Morphism) -> Result<Morphism> {
    if !(a.source().as_ref() == b.source().as_ref()) {
        return Err(Error::GameMismatch(format!("pairing sources differ: {} vs {}", a.source().shape(), b.source().shape())));
    }
    let source = a.source().clone();
    let target = Arc::new(with(a.target(), b.target()));
    let arena = Arc::new(lollipop(&source, &target));
    let fa = |p: &[Tag]| rebase(p, &[(&[L], &[L]), (&[R], &[R, L])]);
    let fb = |p: &[Tag]| rebase(p, &[(&[L], &[L]), (&[R], &[R, R])]);
    let mut summands = Vec::new();
    for (w, s, zs, t, zt) in paired_summands(a, b) {
        let ps = map_plays(&s.scale(zs), &arena, &fa, &|q| q)?;
        let pt = map_plays(&t.scale(zt), &arena, &fb, &|q| q)?;
        summands.push((w, union_strategy(&arena, vec![ps, pt])?));
    }
    Ok(Morphism::from_parts(source, target, arena, summands))
}

/// `[σ, τ] : g ⊕ h ⊸ k` from `σ : g ⊸ k` and `τ : h ⊸ k`. After O's opening
/// move P asks the source's protocol question and follows the branch chosen.
pub fn copair(a: &Morphism, b: &Morphism) -> Result<Morphism> {
    if !(a.target().as_ref() == b.target().as_ref()) {
        return Err(Error::GameMismatch(format!("copair targets differ: {} vs {}", a.target().shape(), b.target().shape())));
    }
    if a.target().is_empty() {
        return Err(Error::InvalidArgument("copair into a game with no moves".into()));
    }
    let source = Arc::new(oplus(a.source(), b.source()));
    let target = a.target().clone();
    let arena = Arc::new(lollipop(&source, &target));
    let q = arena.find_move(&[L, Tag::Proto], "⊥").expect("sum protocol");
    let l = arena.find_move(&[L, Tag::Proto], "l").expect("sum protocol");
    let r = arena.find_move(&[L, Tag::Proto], "r").expect("sum protocol");
    let fa = |p: &[Tag]| rebase(p, &[(&[L], &[L, L]), (&[R], &[R])]);
    let fb = |p: &[Tag]| rebase(p, &[(&[L], &[L, R]), (&[R], &[R])]);
    let insert = |choice: usize| {
        move |p: Position| {
            let mut out = Vec::with_capacity(p.len() + 2);
            out.push(p[0]);
            out.push(q);
            out.push(choice);
            out.extend_from_slice(&p[1..]);
            out
        }
    };
    let (wl, wr) = (insert(l), insert(r));
    let mut summands = Vec::new();
    for (w, s, zs, t, zt) in paired_summands(a, b) {
        let ps = map_plays(&s.scale(zs), &arena, &fa, &wl)?;
        let pt = map_plays(&t.scale(zt), &arena, &fb, &wr)?;
        summands.push((w, union_strategy(&arena, vec![ps, pt])?));
    }
    Ok(Morphism::from_parts(source, target, arena, summands))
}

/// Plays of `(g1 ⊗ g2) ⊸ (h1 ⊗ h2)` whose restrictions are plays of `σ` and
/// `τ`, weighted by the product of their weights.
pub fn tensor_strategies(s: &Strategy, t: &Strategy, arena: &Arc<Game>) -> Result<Strategy> {
    let sides: Vec<(usize, usize)> = arena
        .moves()
        .iter()
        .map(|m| {
            let (side, path) = match m.path.as_slice() {
                [L, L, rest @ ..] => (0, [&[L][..], rest].concat()),
                [R, L, rest @ ..] => (0, [&[R][..], rest].concat()),
                [L, R, rest @ ..] => (1, [&[L][..], rest].concat()),
                [R, R, rest @ ..] => (1, [&[R][..], rest].concat()),
                _ => return Err(Error::Internal(format!("unexpected move {m} in tensor arena"))),
            };
            let g = if side == 0 { s.game() } else { t.game() };
            g.find_move(&path, &m.base)
                .map(|i| (side, i))
                .ok_or_else(|| Error::GameMismatch(format!("move {m} has no counterpart")))
        })
        .collect::<Result<_>>()?;
    let at = arena.trie();
    let (st, tt) = (s.trie(), t.trie());
    let mut plays = Vec::new();
    let mut seq = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn go(
        at: &Trie,
        st: &Trie,
        tt: &Trie,
        sides: &[(usize, usize)],
        nodes: (usize, usize, usize),
        seq: &mut Vec<usize>,
        out: &mut Vec<Position>,
    ) {
        let (a, x, y) = nodes;
        if at.children(a).is_empty() {
            if st.is_terminal(x) && tt.is_terminal(y) {
                out.push(seq.clone());
            }
            return;
        }
        for &(m, a2) in at.children(a) {
            let (side, i) = sides[m];
            let next = if side == 0 { st.child(x, i).map(|x2| (a2, x2, y)) } else { tt.child(y, i).map(|y2| (a2, x, y2)) };
            if let Some(n) = next {
                seq.push(m);
                go(at, st, tt, sides, n, seq, out);
                seq.pop();
            }
        }
    }
    let mut found = Vec::new();
    go(&at, &st, &tt, &sides, (ROOT, ROOT, ROOT), &mut seq, &mut found);
    for p in found {
        let mut ps = Vec::new();
        let mut pt = Vec::new();
        for &m in &p {
            let (side, i) = sides[m];
            if side == 0 { ps.push(i) } else { pt.push(i) }
        }
        let z = s.weight_of(&ps).unwrap_or(ONE) * t.weight_of(&pt).unwrap_or(ONE);
        plays.push((z, p));
    }
    Strategy::new(arena.clone(), plays)
}

/// Bilinear tensor of morphisms.
pub fn tensor_morphisms(a: &Morphism, b: &Morphism) -> Result<Morphism> {
    let source = Arc::new(tensor(a.source(), b.source()));
    let target = Arc::new(tensor(a.target(), b.target()));
    let arena = Arc::new(lollipop(&source, &target));
    let mut summands = Vec::new();
    for (z, s) in a.summands() {
        for (u, t) in b.summands() {
            summands.push((z * u, tensor_strategies(s, t, &arena)?));
        }
    }
    Ok(Morphism::from_parts(source, target, arena, summands))
}
