//! Prefix tree over a set of move sequences.

#[derive(Debug, Clone)]
struct Node {
    parent: Option<usize>,
    mv: Option<usize>,
    depth: usize,
    children: Vec<(usize, usize)>,
    terminal: bool,
}

#[derive(Debug, Clone)]
pub struct Trie {
    nodes: Vec<Node>,
}

pub const ROOT: usize = 0;

impl Trie {
    pub fn from_positions<'a>(positions: impl IntoIterator<Item = &'a [usize]>) -> Trie {
        let mut t = Trie { nodes: vec![Node { parent: None, mv: None, depth: 0, children: Vec::new(), terminal: false }] };
        for p in positions {
            t.insert(p);
        }
        for n in &mut t.nodes {
            n.children.sort_unstable();
        }
        t
    }

    fn insert(&mut self, seq: &[usize]) {
        let mut cur = ROOT;
        for &m in seq {
            cur = match self.nodes[cur].children.iter().find(|&&(c, _)| c == m) {
                Some(&(_, n)) => n,
                None => {
                    let id = self.nodes.len();
                    let depth = self.nodes[cur].depth + 1;
                    self.nodes.push(Node { parent: Some(cur), mv: Some(m), depth, children: Vec::new(), terminal: false });
                    self.nodes[cur].children.push((m, id));
                    id
                }
            };
        }
        self.nodes[cur].terminal = true;
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.len() == 1 && !self.nodes[0].terminal
    }

    pub fn child(&self, node: usize, mv: usize) -> Option<usize> {
        let ch = &self.nodes[node].children;
        ch.binary_search_by_key(&mv, |&(m, _)| m).ok().map(|i| ch[i].1)
    }

    /// `(move, node)` pairs, sorted by move.
    pub fn children(&self, node: usize) -> &[(usize, usize)] {
        &self.nodes[node].children
    }

    /// True when the sequence ending at `node` was one of the inserted ones.
    pub fn is_terminal(&self, node: usize) -> bool {
        self.nodes[node].terminal
    }

    pub fn depth(&self, node: usize) -> usize {
        self.nodes[node].depth
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        self.nodes[node].parent
    }

    pub fn last_move(&self, node: usize) -> Option<usize> {
        self.nodes[node].mv
    }

    pub fn sequence(&self, mut node: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes[node].depth);
        while let Some(m) = self.nodes[node].mv {
            out.push(m);
            node = self.nodes[node].parent.expect("non-root node has a parent");
        }
        out.reverse();
        out
    }

    pub fn find(&self, seq: &[usize]) -> Option<usize> {
        seq.iter().try_fold(ROOT, |n, &m| self.child(n, m))
    }

    pub fn node_ids(&self) -> std::ops::Range<usize> {
        0..self.nodes.len()
    }
}
