//! Policy-driven strategy generation, and the copycat policy used by every
//! structural strategy.
//!
//! A copycat is described by cases. Each case fixes the protocol answers of
//! some sum nodes and pairs up blocks of the arena; a move played by O in one
//! block is copied by P into its partner. P keeps every case consistent with
//! the history and, when the live cases disagree about where to copy, asks a
//! protocol question whose answer separates them.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::game::{Game, Owner, Position, Tag};
use crate::scalar::ONE;
use crate::strategy::Strategy;
use crate::trie::{Trie, ROOT};

/// Walk the arena, branching over every O-move and asking `policy` for P's
/// response at odd depth. Returns the maximal positions reached.
pub(crate) fn generate(arena: &Game, policy: &dyn Fn(&[usize]) -> Result<usize>) -> Result<Vec<Position>> {
    let trie = arena.trie();
    let mut out = Vec::new();
    let mut history = Vec::new();
    walk(arena, &trie, ROOT, &mut history, policy, &mut out)?;
    Ok(out)
}

fn walk(
    arena: &Game,
    trie: &Trie,
    node: usize,
    history: &mut Vec<usize>,
    policy: &dyn Fn(&[usize]) -> Result<usize>,
    out: &mut Vec<Position>,
) -> Result<()> {
    if trie.children(node).is_empty() {
        out.push(history.clone());
        return Ok(());
    }
    if history.len() % 2 == 0 {
        for &(m, child) in trie.children(node) {
            history.push(m);
            walk(arena, trie, child, history, policy, out)?;
            history.pop();
        }
    } else {
        let n = policy(history)?;
        let child = trie.child(node, n).ok_or_else(|| {
            Error::Internal(format!(
                "response {} is not legal after `{}`",
                arena.move_at(n),
                arena.format_position(history)
            ))
        })?;
        history.push(n);
        walk(arena, trie, child, history, policy, out)?;
        history.pop();
    }
    Ok(())
}

/// Unit-weight strategy generated by a policy.
pub(crate) fn strategy_from_policy(arena: Arc<Game>, policy: &dyn Fn(&[usize]) -> Result<usize>) -> Result<Strategy> {
    let mut plays = generate(&arena, policy)?;
    plays.sort();
    let plays = plays.into_iter().map(|p| (ONE, p)).collect();
    Ok(Strategy::from_sorted(arena, plays))
}

#[derive(Debug, Clone, Default)]
pub struct Case {
    /// Protocol answer (`Left` = l, `Right` = r) at each listed sum node.
    pub choices: Vec<(Vec<Tag>, Tag)>,
    /// Pairs of blocks copied into each other.
    pub pairs: Vec<(Vec<Tag>, Vec<Tag>)>,
}

impl Case {
    pub fn new(choices: &[(&[Tag], Tag)], pairs: &[(&[Tag], &[Tag])]) -> Case {
        Case {
            choices: choices.iter().map(|(p, t)| (p.to_vec(), *t)).collect(),
            pairs: pairs.iter().map(|(a, b)| (a.to_vec(), b.to_vec())).collect(),
        }
    }

    fn choice(&self, node: &[Tag]) -> Option<Tag> {
        self.choices.iter().find(|(p, _)| p == node).map(|(_, t)| *t)
    }

    fn in_block(&self, path: &[Tag]) -> bool {
        self.pairs.iter().any(|(a, b)| path.starts_with(a) || path.starts_with(b))
    }

    fn consistent(&self, arena: &Game, m: usize) -> bool {
        let mv = arena.move_at(m);
        if mv.is_protocol() {
            let node = &mv.path[..mv.path.len() - 1];
            if let Some(c) = self.choice(node) {
                return match mv.base.as_str() {
                    "l" => c == Tag::Left,
                    "r" => c == Tag::Right,
                    _ => true,
                };
            }
        }
        self.in_block(&mv.path)
    }

    /// Where this case copies `m`, as `(path, base)`.
    fn target(&self, arena: &Game, m: usize) -> Option<(Vec<Tag>, String)> {
        let mv = arena.move_at(m);
        for (a, b) in &self.pairs {
            for (from, to) in [(a, b), (b, a)] {
                if mv.path.starts_with(from) {
                    let mut path = to.clone();
                    path.extend_from_slice(&mv.path[from.len()..]);
                    return Some((path, mv.base.clone()));
                }
            }
        }
        None
    }
}

struct Machine<'a> {
    arena: &'a Game,
    trie: &'a Trie,
    cases: &'a [Case],
    alive: Vec<bool>,
    pending: Vec<usize>,
    history: Vec<usize>,
    node: usize,
}

impl<'a> Machine<'a> {
    fn new(arena: &'a Game, trie: &'a Trie, cases: &'a [Case]) -> Self {
        Machine { arena, trie, cases, alive: vec![true; cases.len()], pending: Vec::new(), history: Vec::new(), node: ROOT }
    }

    fn live(&self) -> impl Iterator<Item = &Case> + '_ {
        self.cases.iter().zip(&self.alive).filter(|(_, a)| **a).map(|(c, _)| c)
    }

    fn play(&mut self, m: usize) -> Result<()> {
        for (c, a) in self.cases.iter().zip(self.alive.iter_mut()) {
            if *a && !c.consistent(self.arena, m) {
                *a = false;
            }
        }
        if !self.alive.iter().any(|a| *a) {
            return Err(self.stuck("no case accounts for the history"));
        }
        self.history.push(m);
        self.node = self.trie.child(self.node, m).ok_or_else(|| self.stuck("history left the arena"))?;
        Ok(())
    }

    fn stuck(&self, why: &str) -> Error {
        Error::Internal(format!("copycat after `{}`: {why}", self.arena.format_position(&self.history)))
    }

    fn is_skeleton(&self, node: &[Tag]) -> bool {
        self.live().any(|c| c.choice(node).is_some())
    }

    fn protocol_move(&self, node: &[Tag], base: &str) -> Option<usize> {
        let mut path = node.to_vec();
        path.push(Tag::Proto);
        self.arena.find_move(&path, base)
    }

    fn played(&self, m: usize) -> bool {
        self.history.contains(&m)
    }

    /// Response to the O-move `m`, already appended to the history.
    fn respond(&mut self, m: usize) -> Result<usize> {
        let mv = self.arena.move_at(m);
        if mv.is_protocol() {
            let node = mv.path[..mv.path.len() - 1].to_vec();
            if self.is_skeleton(&node) {
                if mv.base == "⊥" {
                    return self.answer(&node, m);
                }
                let resume = self.pending.pop().ok_or_else(|| self.stuck("protocol answer with nothing pending"))?;
                return self.respond(resume);
            }
        }
        self.copy(m)
    }

    fn answer(&mut self, node: &[Tag], asked: usize) -> Result<usize> {
        let mut choices: Vec<Tag> = self.live().filter_map(|c| c.choice(node)).collect();
        choices.sort();
        choices.dedup();
        match choices.as_slice() {
            [t] => self
                .protocol_move(node, if *t == Tag::Left { "l" } else { "r" })
                .ok_or_else(|| self.stuck("missing protocol answer")),
            [] => Err(self.stuck("no live case answers this question")),
            _ => self.discriminate(asked),
        }
    }

    /// Ask a P-question at a sum node on which the live cases disagree.
    fn discriminate(&mut self, waiting: usize) -> Result<usize> {
        let live: Vec<&Case> = self.live().collect();
        let mut nodes: Vec<&Vec<Tag>> = live.iter().flat_map(|c| c.choices.iter().map(|(p, _)| p)).collect();
        nodes.sort();
        nodes.dedup();
        for node in nodes {
            let vals: Vec<Option<Tag>> = live.iter().map(|c| c.choice(node)).collect();
            if vals.iter().any(Option::is_none) || vals.iter().all(|v| *v == vals[0]) {
                continue;
            }
            let Some(q) = self.protocol_move(node, "⊥") else { continue };
            if self.arena.move_at(q).owner() == Owner::Player
                && !self.played(q)
                && self.trie.child(self.node, q).is_some()
            {
                self.pending.push(waiting);
                return Ok(q);
            }
        }
        Err(self.stuck("live cases disagree and no question separates them"))
    }

    fn copy(&mut self, m: usize) -> Result<usize> {
        let mut targets: Vec<(Vec<Tag>, String)> = self.live().filter_map(|c| c.target(self.arena, m)).collect();
        targets.sort();
        targets.dedup();
        let (path, base) = match targets.len() {
            0 => return Err(self.stuck("move lies in no block")),
            1 => targets.pop().unwrap(),
            _ => return self.discriminate(m),
        };
        // Open any unanswered sum node above the target first.
        let mut nodes: Vec<Vec<Tag>> =
            self.live().flat_map(|c| c.choices.iter().map(|(p, _)| p.clone())).filter(|p| path.starts_with(p) && p.len() < path.len()).collect();
        nodes.sort_by_key(Vec::len);
        nodes.dedup();
        for node in nodes {
            let answered = ["l", "r"].iter().any(|b| self.protocol_move(&node, b).is_some_and(|x| self.played(x)));
            if answered {
                continue;
            }
            let q = self.protocol_move(&node, "⊥").ok_or_else(|| self.stuck("missing protocol question"))?;
            if self.played(q) || self.arena.move_at(q).owner() != Owner::Player {
                return Err(self.stuck("target lies under an unopened sum"));
            }
            self.pending.push(m);
            return Ok(q);
        }
        self.arena.find_move(&path, &base).ok_or_else(|| self.stuck("copy target is not a move"))
    }
}

/// The copycat policy: replays the history through the case machine.
pub(crate) fn copycat_policy<'a>(arena: &'a Game, trie: &'a Trie, cases: &'a [Case]) -> impl Fn(&[usize]) -> Result<usize> + 'a {
    move |history: &[usize]| {
        let mut mc = Machine::new(arena, trie, cases);
        let mut k = 0;
        loop {
            let o = history[k];
            mc.play(o)?;
            let r = mc.respond(o)?;
            if k + 1 == history.len() {
                return Ok(r);
            }
            if history[k + 1] != r {
                return Err(mc.stuck("history disagrees with the copycat"));
            }
            mc.play(r)?;
            k += 2;
        }
    }
}

pub(crate) fn copycat(arena: Arc<Game>, cases: &[Case]) -> Result<Strategy> {
    let trie = arena.trie();
    let policy = copycat_policy(&arena, &trie, cases);
    let mut plays = generate(&arena, &policy)?;
    plays.sort();
    Ok(Strategy::from_sorted(arena.clone(), plays.into_iter().map(|p| (ONE, p)).collect()))
}

/// Move `pos` from `src` into `dst`, rewriting each path with `f`.
pub(crate) fn retag(src: &Game, pos: &[usize], dst: &Game, f: &dyn Fn(&[Tag]) -> Option<Vec<Tag>>) -> Result<Position> {
    pos.iter()
        .map(|&i| {
            let m = src.move_at(i);
            let path = f(&m.path).ok_or_else(|| Error::Internal(format!("no image for move {m}")))?;
            let j = dst.find_move(&path, &m.base).ok_or_else(|| Error::Internal(format!("no image for move {m}")))?;
            if dst.move_at(j).label != m.label {
                return Err(Error::Internal(format!("image of {m} has a different label")));
            }
            Ok(j)
        })
        .collect()
}

/// Replace the leading `from` of a path by `to`.
pub(crate) fn rebase(path: &[Tag], rules: &[(&[Tag], &[Tag])]) -> Option<Vec<Tag>> {
    for (from, to) in rules {
        if path.starts_with(from) {
            let mut out = to.to_vec();
            out.extend_from_slice(&path[from.len()..]);
            return Some(out);
        }
    }
    None
}
