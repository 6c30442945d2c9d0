//! Games: labelled moves, a coherence relation on answers, and a finite set
//! of maximal positions.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::clique::{self, Clique, CliqueIndex};
use crate::config;
use crate::error::{Error, Result};
use crate::trie::Trie;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Owner {
    Opponent,
    Player,
}

impl Owner {
    pub fn flip(self) -> Self {
        match self {
            Owner::Opponent => Owner::Player,
            Owner::Player => Owner::Opponent,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Owner::Opponent => 'O',
            Owner::Player => 'P',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Kind {
    Question,
    Answer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MoveLabel {
    pub owner: Owner,
    pub kind: Kind,
}

impl MoveLabel {
    pub const OQ: MoveLabel = MoveLabel { owner: Owner::Opponent, kind: Kind::Question };
    pub const OA: MoveLabel = MoveLabel { owner: Owner::Opponent, kind: Kind::Answer };
    pub const PQ: MoveLabel = MoveLabel { owner: Owner::Player, kind: Kind::Question };
    pub const PA: MoveLabel = MoveLabel { owner: Owner::Player, kind: Kind::Answer };

    pub fn flip(self) -> Self {
        MoveLabel { owner: self.owner.flip(), kind: self.kind }
    }
}

/// One step of a move's address: which operand of a binary constructor, or
/// the protocol moves of a sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Tag {
    Proto,
    Left,
    Right,
}

impl Tag {
    pub fn letter(self) -> char {
        match self {
            Tag::Proto => 'P',
            Tag::Left => 'L',
            Tag::Right => 'R',
        }
    }

    pub fn from_letter(c: char) -> Option<Tag> {
        match c {
            'P' => Some(Tag::Proto),
            'L' => Some(Tag::Left),
            'R' => Some(Tag::Right),
            _ => None,
        }
    }
}

/// A move, identified within its game by `(path, base)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    pub path: Vec<Tag>,
    pub base: String,
    pub label: MoveLabel,
}

impl Move {
    pub fn new(base: &str, label: MoveLabel) -> Self {
        Move { path: Vec::new(), base: base.to_string(), label }
    }

    pub fn is_answer(&self) -> bool {
        self.label.kind == Kind::Answer
    }

    pub fn is_question(&self) -> bool {
        self.label.kind == Kind::Question
    }

    pub fn owner(&self) -> Owner {
        self.label.owner
    }

    pub fn is_protocol(&self) -> bool {
        self.path.last() == Some(&Tag::Proto)
    }

    pub fn prefixed(&self, tag: Tag) -> Move {
        let mut path = Vec::with_capacity(self.path.len() + 1);
        path.push(tag);
        path.extend_from_slice(&self.path);
        Move { path, base: self.base.clone(), label: self.label }
    }

    pub fn flipped(&self) -> Move {
        Move { path: self.path.clone(), base: self.base.clone(), label: self.label.flip() }
    }

    pub fn path_string(&self) -> String {
        self.path.iter().map(|t| t.letter()).collect()
    }

    /// Same move with its first `n` path tags removed.
    pub fn strip(&self, n: usize) -> Move {
        Move { path: self.path[n..].to_vec(), base: self.base.clone(), label: self.label }
    }

    pub fn name(&self) -> String {
        if self.path.is_empty() {
            self.base.clone()
        } else {
            format!("{}_{}", self.base, self.path_string())
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A clique written as a sorted list of moves. Used as matrix labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CliqueLabel(Vec<Move>);

impl CliqueLabel {
    pub fn new(mut moves: Vec<Move>) -> Self {
        moves.sort();
        moves.dedup();
        CliqueLabel(moves)
    }

    pub(crate) fn from_moves_unsorted(moves: Vec<Move>) -> Self {
        CliqueLabel(moves)
    }

    pub(crate) fn synthetic(name: &str) -> Self {
        CliqueLabel(vec![Move::new(name, MoveLabel::PA)])
    }

    pub fn moves(&self) -> &[Move] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> Vec<String> {
        self.0.iter().map(Move::name).collect()
    }

    /// Label with the leading path tag of every move removed.
    pub fn strip_side(&self) -> CliqueLabel {
        CliqueLabel(self.0.iter().map(|m| if m.path.is_empty() { m.clone() } else { m.strip(1) }).collect())
    }
}

impl fmt::Display for CliqueLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        write!(f, "{{{}}}", self.names().join(","))
    }
}

/// The type expression a game was built from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Shape {
    One,
    Bool,
    Tensor(Box<Shape>, Box<Shape>),
    Lolli(Box<Shape>, Box<Shape>),
    With(Box<Shape>, Box<Shape>),
    Oplus(Box<Shape>, Box<Shape>),
}

impl Shape {
    /// The sub-shape at `path`, following `Left`/`Right` tags.
    pub fn at(&self, path: &[Tag]) -> Option<&Shape> {
        let Some((first, rest)) = path.split_first() else {
            return Some(self);
        };
        let (l, r) = self.children()?;
        match first {
            Tag::Left => l.at(rest),
            Tag::Right => r.at(rest),
            Tag::Proto => None,
        }
    }

    pub fn children(&self) -> Option<(&Shape, &Shape)> {
        match self {
            Shape::Tensor(a, b) | Shape::Lolli(a, b) | Shape::With(a, b) | Shape::Oplus(a, b) => Some((a, b)),
            Shape::One | Shape::Bool => None,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Shape::Lolli(..) => 0,
            Shape::Oplus(..) => 1,
            Shape::With(..) => 2,
            Shape::Tensor(..) => 3,
            Shape::One | Shape::Bool => 5,
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (op, a, b) = match self {
            Shape::One => return f.write_str("1"),
            Shape::Bool => return f.write_str("Bool"),
            Shape::Tensor(a, b) => ("⊗", a, b),
            Shape::Lolli(a, b) => ("⊸", a, b),
            Shape::With(a, b) => ("&", a, b),
            Shape::Oplus(a, b) => ("⊕", a, b),
        };
        // All binary constructors associate to the right.
        let p = self.precedence();
        let wrap = |s: &Shape, strict: bool| {
            if s.precedence() < p || (strict && s.precedence() == p) {
                format!("({s})")
            } else {
                s.to_string()
            }
        };
        write!(f, "{} {} {}", wrap(a, true), op, wrap(b, false))
    }
}

pub type Position = Vec<usize>;

/// Outcome of one mechanical check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail(String),
    Skipped(String),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    /// Passed, or skipped by the size guard.
    pub fn is_ok(&self) -> bool {
        !matches!(self, Verdict::Fail(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::Fail(why) => write!(f, "FAIL ({why})"),
            Verdict::Skipped(why) => write!(f, "skipped ({why})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub alternation: Verdict,
    pub well_balanced: Verdict,
    pub completeness: Verdict,
    pub extension: Verdict,
}

impl AxiomReport {
    pub fn all_ok(&self) -> bool {
        self.verdicts().iter().all(|(_, v)| v.is_ok())
    }

    pub fn verdicts(&self) -> [(&'static str, &Verdict); 4] {
        [
            ("alternation", &self.alternation),
            ("well-balanced", &self.well_balanced),
            ("completeness", &self.completeness),
            ("extension", &self.extension),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    pub(crate) shape: Shape,
    pub(crate) moves: Vec<Move>,
    /// Coherent pairs of answers, as `(min, max)` move indices; reflexivity
    /// is implicit.
    pub(crate) coherence: BTreeSet<(usize, usize)>,
    pub(crate) positions: Vec<Position>,
}

impl Game {
    /// Build a game from parts. Moves must be sorted and distinct; positions
    /// are sorted and deduplicated here.
    pub(crate) fn from_parts(
        shape: Shape,
        moves: Vec<Move>,
        coherence: BTreeSet<(usize, usize)>,
        mut positions: Vec<Position>,
    ) -> Game {
        debug_assert!(moves.windows(2).all(|w| (&w[0].path, &w[0].base) < (&w[1].path, &w[1].base)));
        debug_assert!(coherence.iter().all(|&(a, b)| a < b && moves[a].label == moves[b].label && moves[a].is_answer()));
        positions.sort();
        positions.dedup();
        Game { shape, moves, coherence, positions }
    }

    /// A game given directly by its data rather than through the
    /// constructors. The coherence relation is closed under symmetry.
    pub fn custom(
        shape: Shape,
        mut moves: Vec<Move>,
        coherent_pairs: &[(Move, Move)],
        positions: &[Vec<Move>],
    ) -> Result<Game> {
        moves.sort();
        if moves.windows(2).any(|w| w[0].path == w[1].path && w[0].base == w[1].base) {
            return Err(Error::InvalidArgument("duplicate move".into()));
        }
        let idx = |m: &Move| {
            moves
                .binary_search(m)
                .map_err(|_| Error::InvalidArgument(format!("unknown move {m}")))
        };
        let mut coherence = BTreeSet::new();
        for (a, b) in coherent_pairs {
            let (i, j) = (idx(a)?, idx(b)?);
            if moves[i].label != moves[j].label || !moves[i].is_answer() {
                return Err(Error::InvalidArgument(format!(
                    "coherence must relate answers with equal labels: {a} ~ {b}"
                )));
            }
            if i != j {
                coherence.insert((i.min(j), i.max(j)));
            }
        }
        let positions = positions.iter().map(|p| p.iter().map(idx).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        Ok(Game::from_parts(shape, moves, coherence, positions))
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn positions(&self) -> &[Position] {
        &self.positions
    }

    pub fn move_at(&self, i: usize) -> &Move {
        &self.moves[i]
    }

    /// Index of the move with this address, ignoring labels.
    pub fn find_move(&self, path: &[Tag], base: &str) -> Option<usize> {
        self.moves
            .binary_search_by(|m| (m.path.as_slice(), m.base.as_str()).cmp(&(path, base)))
            .ok()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn coherent(&self, a: usize, b: usize) -> bool {
        if !(self.moves[a].is_answer() && self.moves[b].is_answer()) {
            return false;
        }
        a == b || self.coherence.contains(&(a.min(b), a.max(b)))
    }

    /// Distinct answers with equal labels that are not coherent.
    pub fn strictly_incoherent(&self, a: usize, b: usize) -> bool {
        a != b
            && self.moves[a].is_answer()
            && self.moves[a].label == self.moves[b].label
            && !self.coherent(a, b)
    }

    pub fn coherent_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.coherence.iter().copied()
    }

    pub fn position_names(&self, pos: &[usize]) -> Vec<String> {
        pos.iter().map(|&i| self.moves[i].name()).collect()
    }

    pub fn format_position(&self, pos: &[usize]) -> String {
        if pos.is_empty() {
            return "ε".into();
        }
        self.position_names(pos).join(" ")
    }

    /// Answers of `pos` owned by `owner`, sorted.
    pub fn answers_of(&self, pos: &[usize], owner: Owner) -> Vec<usize> {
        let mut out: Vec<usize> =
            pos.iter().copied().filter(|&i| self.moves[i].is_answer() && self.moves[i].owner() == owner).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn answers(&self, pos: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = pos.iter().copied().filter(|&i| self.moves[i].is_answer()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn oans(&self, pos: &[usize]) -> Vec<usize> {
        self.answers_of(pos, Owner::Opponent)
    }

    pub fn pans(&self, pos: &[usize]) -> Vec<usize> {
        self.answers_of(pos, Owner::Player)
    }

    pub fn label_of(&self, clique: &[usize]) -> CliqueLabel {
        CliqueLabel::from_moves_unsorted(clique.iter().map(|&i| self.moves[i].clone()).collect())
    }

    /// All maximal cliques of the given polarity, in canonical order. When
    /// the game has no answers of that polarity the empty clique is the
    /// unique maximal clique.
    pub fn maximal_cliques(&self, owner: Owner) -> Vec<Clique> {
        clique::maximal_cliques(self, owner)
    }

    pub fn clique_index(&self, owner: Owner) -> CliqueIndex {
        CliqueIndex::new(self, owner)
    }

    pub fn clique_labels(&self, owner: Owner) -> Vec<CliqueLabel> {
        self.clique_index(owner).labels(self)
    }

    /// `(dim D^O, dim D^P)`: the number of maximal O- and P-cliques.
    pub fn hilbert_dims(&self) -> (usize, usize) {
        (self.maximal_cliques(Owner::Opponent).len(), self.maximal_cliques(Owner::Player).len())
    }

    /// Prefix closure of the maximal positions, including ε.
    pub fn prefixes(&self) -> BTreeSet<Position> {
        let mut out = BTreeSet::new();
        out.insert(Vec::new());
        for p in &self.positions {
            for k in 1..=p.len() {
                out.insert(p[..k].to_vec());
            }
        }
        out
    }

    pub fn is_maximal(&self, pos: &[usize]) -> bool {
        self.positions.binary_search_by(|p| p.as_slice().cmp(pos)).is_ok()
    }

    pub fn trie(&self) -> Trie {
        Trie::from_positions(self.positions.iter().map(|p| p.as_slice()))
    }

    pub fn check_axioms(&self) -> AxiomReport {
        AxiomReport {
            alternation: self.check_alternation(),
            well_balanced: self.check_well_balanced(),
            completeness: self.check_completeness(),
            extension: self.check_extension(),
        }
    }

    fn check_alternation(&self) -> Verdict {
        for p in &self.positions {
            for (k, &m) in p.iter().enumerate() {
                let want = if k % 2 == 0 { Owner::Opponent } else { Owner::Player };
                if self.moves[m].owner() != want {
                    return Verdict::Fail(format!(
                        "move {} of `{}` should be by {}",
                        k + 1,
                        self.format_position(p),
                        want.letter()
                    ));
                }
            }
        }
        Verdict::Pass
    }

    fn check_well_balanced(&self) -> Verdict {
        for p in &self.positions {
            let mut open = 0i64;
            for (k, &m) in p.iter().enumerate() {
                open += if self.moves[m].is_question() { 1 } else { -1 };
                if open < 0 {
                    return Verdict::Fail(format!(
                        "prefix of length {} of `{}` has more answers than questions",
                        k + 1,
                        self.format_position(p)
                    ));
                }
            }
            if open != 0 {
                return Verdict::Fail(format!("`{}` leaves {open} question(s) unanswered", self.format_position(p)));
            }
        }
        Verdict::Pass
    }

    fn check_completeness(&self) -> Verdict {
        let (o, pl) = (self.clique_index(Owner::Opponent), self.clique_index(Owner::Player));
        for p in &self.positions {
            if o.of_position(self, p).is_none() {
                return Verdict::Fail(format!(
                    "O-answers of `{}` are not a maximal O-clique",
                    self.format_position(p)
                ));
            }
            if pl.of_position(self, p).is_none() {
                return Verdict::Fail(format!(
                    "P-answers of `{}` are not a maximal P-clique",
                    self.format_position(p)
                ));
            }
        }
        Verdict::Pass
    }

    /// Clique pairs are only required when they can arise from one choice
    /// of branch at every `&` and `⊕` node, the choice already made by `s`.
    fn check_extension(&self) -> Verdict {
        let limit = config::check_limit();
        if self.positions.len() > limit {
            return Verdict::Skipped(format!("{} maximal positions exceed the limit of {limit}", self.positions.len()));
        }
        let (o, pl) = (self.clique_index(Owner::Opponent), self.clique_index(Owner::Player));
        // Clique pair reached by each maximal position.
        let mut reached: HashMap<Vec<usize>, BTreeSet<(usize, usize)>> = HashMap::new();
        for p in &self.positions {
            let (Some(vi), Some(wi)) = (o.of_position(self, p), pl.of_position(self, p)) else {
                return Verdict::Skipped("completeness fails, cliques of positions are undefined".into());
            };
            for k in 0..=p.len() {
                reached.entry(p[..k].to_vec()).or_default().insert((vi, wi));
            }
        }
        let mut prefixes: Vec<&Vec<usize>> = reached.keys().collect();
        prefixes.sort();
        for s in prefixes {
            let ans = self.answers(s);
            let sides = clique::sides_of(self, s);
            let have = &reached[s];
            for (vi, v) in o.cliques().iter().enumerate() {
                for (wi, w) in pl.cliques().iter().enumerate() {
                    let inside = ans.iter().all(|&a| v.contains(a) || w.contains(a));
                    if inside && !have.contains(&(vi, wi)) && v.compatible(w, &sides) {
                        return Verdict::Fail(format!(
                            "`{}` cannot be completed to answers {} ∪ {}",
                            self.format_position(s),
                            v.label(self),
                            w.label(self)
                        ));
                    }
                }
            }
        }
        Verdict::Pass
    }

    pub fn to_json(&self) -> GameJson {
        let (dim_o, dim_p) = self.hilbert_dims();
        GameJson {
            shape: self.shape.to_string(),
            moves: self
                .moves
                .iter()
                .map(|m| MoveJson {
                    name: m.name(),
                    path: m.path_string(),
                    base: m.base.clone(),
                    owner: m.owner(),
                    kind: m.label.kind,
                })
                .collect(),
            coherence: self.coherence.iter().map(|&(a, b)| [a, b]).collect(),
            positions: self.positions.clone(),
            dims: [dim_o, dim_p],
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MoveJson {
    pub name: String,
    pub path: String,
    pub base: String,
    pub owner: Owner,
    pub kind: Kind,
}

/// Serialized game. Positions are sequences of indices into `moves`.
#[derive(Debug, Clone, Serialize)]
pub struct GameJson {
    pub shape: String,
    pub moves: Vec<MoveJson>,
    pub coherence: Vec<[usize; 2]>,
    pub positions: Vec<Position>,
    pub dims: [usize; 2],
}

/// Pairs each answer (by index in `pos`) with the question it closes: the
/// innermost question still open.
pub fn qa_matching(game: &Game, pos: &[usize]) -> Result<Vec<(usize, usize)>> {
    let mut open = Vec::new();
    let mut out = Vec::new();
    for (k, &m) in pos.iter().enumerate() {
        if game.moves[m].is_question() {
            open.push(k);
        } else {
            let q = open.pop().ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "answer {} at {} has no open question in `{}`",
                    game.moves[m],
                    k + 1,
                    game.format_position(pos)
                ))
            })?;
            out.push((k, q));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::*;

    fn names(g: &Game, owner: Owner) -> Vec<String> {
        g.clique_labels(owner).iter().map(|c| c.to_string()).collect()
    }

    #[test]
    fn bool_cliques() {
        let b = bool_game();
        assert_eq!(names(&b, Owner::Player), ["{ff}", "{tt}"]);
        assert_eq!(names(&b, Owner::Opponent), ["∅"]);
        assert_eq!(b.hilbert_dims(), (1, 2));
    }

    #[test]
    fn unit_dims() {
        assert_eq!(unit_game().hilbert_dims(), (1, 1));
        assert_eq!(unit_game().positions(), &[Vec::<usize>::new()]);
    }

    #[test]
    fn bool_axioms_pass() {
        assert!(bool_game().check_axioms().verdicts().iter().all(|(_, v)| v.is_pass()));
    }

    #[test]
    fn extra_answer_breaks_balance() {
        let b = bool_game();
        let q = b.find_move(&[], "⊥").unwrap();
        let tt = b.find_move(&[], "tt").unwrap();
        let mut bad = b.clone();
        bad.positions.push(vec![q, tt, tt]);
        let report = bad.check_axioms();
        assert!(matches!(report.well_balanced, Verdict::Fail(_)));
    }

    #[test]
    fn bool_prefixes() {
        let b = bool_game();
        let mut pre: Vec<String> = b.prefixes().iter().map(|p| b.format_position(p)).collect();
        pre.sort();
        assert_eq!(pre, ["ε", "⊥", "⊥ ff", "⊥ tt"]);
    }

    #[test]
    fn matching_in_bool() {
        let b = bool_game();
        let pos = &b.positions()[1];
        assert_eq!(b.format_position(pos), "⊥ tt");
        assert_eq!(qa_matching(&b, pos).unwrap(), vec![(1, 0)]);
        assert!(qa_matching(&b, &[pos[1]]).is_err());
    }

    #[test]
    fn matching_through_sum_protocol() {
        let g = oplus(&bool_game(), &bool_game());
        let pos = g.positions().iter().find(|p| g.format_position(p).starts_with("⊥_P l_P")).unwrap();
        let m = qa_matching(&g, pos).unwrap();
        assert_eq!(m[0], (1, 0));
        assert_eq!(m[1], (3, 2));
    }

    #[test]
    fn shape_display() {
        let s = Shape::Lolli(
            Box::new(Shape::Tensor(Box::new(Shape::Bool), Box::new(Shape::Bool))),
            Box::new(Shape::Lolli(Box::new(Shape::One), Box::new(Shape::Bool))),
        );
        assert_eq!(s.to_string(), "Bool ⊗ Bool ⊸ 1 ⊸ Bool");
    }
}
