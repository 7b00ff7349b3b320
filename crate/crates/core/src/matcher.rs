//! Aho-Corasick automaton over vertex sequences.
//!
//! The alphabet is the vertex set, so transitions are kept sparse (a hash map
//! per trie node) and missing transitions are resolved through failure links
//! on demand rather than tabulated.

use std::collections::{HashMap, VecDeque};

use crate::graph::VertexId;
use crate::oracle::ExceptionId;

pub type StateId = u32;

const ROOT: StateId = 0;

#[derive(Clone, Debug, Default)]
struct Node {
    next: HashMap<VertexId, StateId>,
    fail: StateId,
    /// Pattern spelled exactly by this node.
    terminal: Option<ExceptionId>,
    /// Nearest proper suffix node that is terminal.
    dict: Option<StateId>,
    /// Smallest pattern id among all patterns that are suffixes of this node.
    best: Option<ExceptionId>,
}

/// Multi-pattern matcher. A state is accepting iff some pattern is a suffix
/// of the input read so far.
#[derive(Clone, Debug)]
pub struct PatternAutomaton {
    nodes: Vec<Node>,
    lengths: Vec<usize>,
}

/// A pattern occurrence ending at `end` (inclusive index into the input).
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Match {
    pub pattern: ExceptionId,
    pub end: usize,
}

impl PatternAutomaton {
    /// Builds the automaton. Pattern `i` gets id `ExceptionId::new(i)`;
    /// duplicate patterns keep the first id.
    pub fn new<P: AsRef<[VertexId]>>(patterns: &[P]) -> Self {
        let mut nodes = vec![Node::default()];
        let mut lengths = Vec::with_capacity(patterns.len());
        for (i, p) in patterns.iter().enumerate() {
            let p = p.as_ref();
            lengths.push(p.len());
            let mut cur = ROOT;
            for &v in p {
                cur = match nodes[cur as usize].next.get(&v) {
                    Some(&n) => n,
                    None => {
                        let id = nodes.len() as StateId;
                        nodes.push(Node::default());
                        nodes[cur as usize].next.insert(v, id);
                        id
                    }
                };
            }
            let node = &mut nodes[cur as usize];
            if cur != ROOT && node.terminal.is_none() {
                node.terminal = Some(ExceptionId::new(i));
            }
        }

        let mut auto = PatternAutomaton { nodes, lengths };
        auto.link();
        auto
    }

    fn link(&mut self) {
        let mut queue = VecDeque::new();
        let root_children: Vec<StateId> =
            self.nodes[ROOT as usize].next.values().copied().collect();
        for c in root_children {
            self.nodes[c as usize].fail = ROOT;
            self.finish(c);
            queue.push_back(c);
        }
        while let Some(u) = queue.pop_front() {
            let edges: Vec<(VertexId, StateId)> = self.nodes[u as usize]
                .next
                .iter()
                .map(|(&v, &c)| (v, c))
                .collect();
            for (v, c) in edges {
                let fail = self.step(self.nodes[u as usize].fail, v);
                self.nodes[c as usize].fail = fail;
                self.finish(c);
                queue.push_back(c);
            }
        }
    }

    fn finish(&mut self, s: StateId) {
        let fail = self.nodes[s as usize].fail;
        let f = &self.nodes[fail as usize];
        let dict = if f.terminal.is_some() {
            Some(fail)
        } else {
            f.dict
        };
        let inherited = f.best;
        let node = &mut self.nodes[s as usize];
        node.dict = dict;
        node.best = match (node.terminal, inherited) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
    }

    pub fn start(&self) -> StateId {
        ROOT
    }

    /// Transition function, following failure links as needed.
    pub fn step(&self, mut state: StateId, v: VertexId) -> StateId {
        loop {
            if let Some(&n) = self.nodes[state as usize].next.get(&v) {
                return n;
            }
            if state == ROOT {
                return ROOT;
            }
            state = self.nodes[state as usize].fail;
        }
    }

    pub fn is_accepting(&self, state: StateId) -> bool {
        self.nodes[state as usize].best.is_some()
    }

    pub fn state_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn pattern_len(&self, id: ExceptionId) -> usize {
        self.lengths[id.index()]
    }

    /// The occurrence with the smallest end index; among patterns ending
    /// there, the smallest id.
    pub fn find_earliest(&self, input: &[VertexId]) -> Option<Match> {
        let mut state = ROOT;
        for (end, &v) in input.iter().enumerate() {
            state = self.step(state, v);
            if let Some(pattern) = self.nodes[state as usize].best {
                return Some(Match { pattern, end });
            }
        }
        None
    }

    /// The first occurrence the scan reaches: smallest end index, longest
    /// pattern among those ending there.
    pub fn find_first(&self, input: &[VertexId]) -> Option<Match> {
        let mut state = ROOT;
        for (end, &v) in input.iter().enumerate() {
            state = self.step(state, v);
            let node = &self.nodes[state as usize];
            let hit = node
                .terminal
                .or_else(|| node.dict.and_then(|d| self.nodes[d as usize].terminal));
            if let Some(pattern) = hit {
                return Some(Match { pattern, end });
            }
        }
        None
    }

    /// Every occurrence in the input, ordered by end index then pattern id.
    pub fn find_all(&self, input: &[VertexId]) -> Vec<Match> {
        let mut out = Vec::new();
        let mut state = ROOT;
        for (end, &v) in input.iter().enumerate() {
            state = self.step(state, v);
            let first = out.len();
            let mut cur = Some(state);
            while let Some(s) = cur {
                let node = &self.nodes[s as usize];
                if let Some(pattern) = node.terminal {
                    out.push(Match { pattern, end });
                }
                cur = node.dict;
            }
            out[first..].sort_by_key(|m| m.pattern);
        }
        out
    }
}

/// Quadratic reference scan used to check the automaton.
pub fn naive_find_all<P: AsRef<[VertexId]>>(patterns: &[P], input: &[VertexId]) -> Vec<Match> {
    let mut out = Vec::new();
    for end in 0..input.len() {
        for (i, p) in patterns.iter().enumerate() {
            let p = p.as_ref();
            if p.is_empty() || p.len() > end + 1 {
                continue;
            }
            if patterns[..i].iter().any(|q| q.as_ref() == p) {
                continue;
            }
            if &input[end + 1 - p.len()..=end] == p {
                out.push(Match {
                    pattern: ExceptionId::new(i),
                    end,
                });
            }
        }
    }
    out
}
