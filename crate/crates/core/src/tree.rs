//! Pruned decoder tree with typed constituent-code leaves.
//!
//! Leaves are classified by their frozen pattern, in the order Rate0, Rate1,
//! Rep, Birep, Spc. A subtree becomes a leaf only if its kind is enabled and
//! its width fits the configured maximum for that kind; otherwise it is split
//! into two halves. Width-1 subtrees are always Rate0 or Rate1 leaves.

use std::fmt::{self, Write as _};

use crate::code::PolarCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Rate0,
    Rate1,
    Rep,
    Birep,
    Spc,
    Branch,
}

impl NodeKind {
    pub const ALL: [NodeKind; 6] =
        [NodeKind::Rate0, NodeKind::Rate1, NodeKind::Rep, NodeKind::Birep, NodeKind::Spc, NodeKind::Branch];

    fn bit(self) -> u8 {
        1 << self as u8
    }

    pub fn name(self) -> &'static str {
        match self {
            NodeKind::Rate0 => "Rate0",
            NodeKind::Rate1 => "Rate1",
            NodeKind::Rep => "Rep",
            NodeKind::Birep => "Birep",
            NodeKind::Spc => "Spc",
            NodeKind::Branch => "Branch",
        }
    }

    /// Number of information bits a leaf of this kind carries.
    pub fn info_bits(self, width: usize) -> usize {
        match self {
            NodeKind::Rate0 | NodeKind::Branch => 0,
            NodeKind::Rate1 => width,
            NodeKind::Rep => 1,
            NodeKind::Birep => 2,
            NodeKind::Spc => width - 1,
        }
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KindSet(u8);

impl KindSet {
    pub fn all() -> Self {
        NodeKind::ALL.iter().copied().collect()
    }

    pub fn contains(self, kind: NodeKind) -> bool {
        self.0 & kind.bit() != 0
    }

    pub fn insert(&mut self, kind: NodeKind) {
        self.0 |= kind.bit();
    }

    pub fn remove(&mut self, kind: NodeKind) {
        // The base kinds cannot be disabled.
        if matches!(kind, NodeKind::Birep | NodeKind::Spc) {
            self.0 &= !kind.bit();
        }
    }
}

impl FromIterator<NodeKind> for KindSet {
    fn from_iter<I: IntoIterator<Item = NodeKind>>(iter: I) -> Self {
        let mut set = KindSet(0);
        for kind in iter {
            set.insert(kind);
        }
        for base in [NodeKind::Rate0, NodeKind::Rate1, NodeKind::Rep, NodeKind::Branch] {
            set.insert(base);
        }
        set
    }
}

/// Maximum leaf widths and enabled leaf kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeConstraints {
    pub max_rate0: usize,
    pub max_rate1: usize,
    pub max_rep: usize,
    pub max_birep: usize,
    pub max_spc: usize,
    pub enabled: KindSet,
}

impl Default for NodeConstraints {
    fn default() -> Self {
        Self::unconstrained()
    }
}

impl NodeConstraints {
    pub fn unconstrained() -> Self {
        Self {
            max_rate0: usize::MAX,
            max_rate1: usize::MAX,
            max_rep: usize::MAX,
            max_birep: usize::MAX,
            max_spc: usize::MAX,
            enabled: KindSet::all(),
        }
    }

    /// Rep <= 32, Birep <= 64, SPC <= 64: the hardware-oriented setup.
    pub fn hardware() -> Self {
        Self { max_rep: 32, max_birep: 64, max_spc: 64, ..Self::unconstrained() }
    }

    /// Only width-1 leaves: the tree of plain SC decoding.
    pub fn bit_level() -> Self {
        Self { max_rate0: 1, max_rate1: 1, max_rep: 1, max_birep: 1, max_spc: 1, enabled: KindSet::all() }
    }

    pub fn without(mut self, kind: NodeKind) -> Self {
        self.enabled.remove(kind);
        self
    }

    fn max_width(&self, kind: NodeKind) -> usize {
        match kind {
            NodeKind::Rate0 => self.max_rate0,
            NodeKind::Rate1 => self.max_rate1,
            NodeKind::Rep => self.max_rep,
            NodeKind::Birep => self.max_birep,
            NodeKind::Spc => self.max_spc,
            NodeKind::Branch => usize::MAX,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub kind: NodeKind,
    pub width: usize,
    /// u-domain interval `[lo, hi)`.
    pub lo: usize,
    pub hi: usize,
    pub children: Option<(usize, usize)>,
    /// Information-bit ordinal of the first unfrozen position in the span.
    pub info_offset: usize,
}

impl Node {
    pub fn is_leaf(&self) -> bool {
        self.children.is_none()
    }

    pub fn info_bits(&self) -> usize {
        self.kind.info_bits(self.width)
    }
}

/// Nodes are stored in pre-order; node 0 is the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoderTree {
    n_bits: usize,
    nodes: Vec<Node>,
    leaves: Vec<usize>,
    constraints: NodeConstraints,
}

/// Kind of the pattern in `frozen` (one flag per position), before constraints.
pub fn classify_pattern(frozen: &[bool]) -> Option<NodeKind> {
    let w = frozen.len();
    let nfrozen = frozen.iter().filter(|&&f| f).count();
    let only_unfrozen = |tail: usize| nfrozen == w - tail && frozen[w - tail..].iter().all(|&f| !f);
    if nfrozen == w {
        Some(NodeKind::Rate0)
    } else if nfrozen == 0 {
        Some(NodeKind::Rate1)
    } else if w >= 2 && only_unfrozen(1) {
        Some(NodeKind::Rep)
    } else if w >= 4 && only_unfrozen(2) {
        Some(NodeKind::Birep)
    } else if w >= 2 && nfrozen == 1 && frozen[0] {
        Some(NodeKind::Spc)
    } else {
        None
    }
}

impl DecoderTree {
    pub fn build(code: &PolarCode, constraints: NodeConstraints) -> Self {
        let mut tree = Self { n_bits: code.n_bits(), nodes: Vec::new(), leaves: Vec::new(), constraints };
        let mask = code.frozen_mask();
        let mut prefix = vec![0usize; mask.len() + 1];
        for (i, &f) in mask.iter().enumerate() {
            prefix[i + 1] = prefix[i] + usize::from(!f);
        }
        tree.grow(mask, &prefix, 0, code.n_bits());
        tree
    }

    fn leaf_kind(&self, pattern: &[bool]) -> Option<NodeKind> {
        if pattern.len() == 1 {
            return Some(if pattern[0] { NodeKind::Rate0 } else { NodeKind::Rate1 });
        }
        let kind = classify_pattern(pattern)?;
        let c = &self.constraints;
        (c.enabled.contains(kind) && pattern.len() <= c.max_width(kind)).then_some(kind)
    }

    fn grow(&mut self, mask: &[bool], prefix: &[usize], lo: usize, hi: usize) -> usize {
        let id = self.nodes.len();
        let width = hi - lo;
        let kind = self.leaf_kind(&mask[lo..hi]).unwrap_or(NodeKind::Branch);
        self.nodes.push(Node { kind, width, lo, hi, children: None, info_offset: prefix[lo] });
        if kind == NodeKind::Branch {
            let mid = lo + width / 2;
            let left = self.grow(mask, prefix, lo, mid);
            let right = self.grow(mask, prefix, mid, hi);
            self.nodes[id].children = Some((left, right));
        } else {
            self.leaves.push(id);
        }
        id
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    pub fn root(&self) -> &Node {
        &self.nodes[0]
    }

    pub fn node(&self, id: usize) -> &Node {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Leaf ids in left-to-right order.
    pub fn leaves(&self) -> &[usize] {
        &self.leaves
    }

    pub fn constraints(&self) -> &NodeConstraints {
        &self.constraints
    }

    pub fn depth(&self) -> usize {
        self.leaves.iter().map(|&l| (self.n_bits / self.nodes[l].width).trailing_zeros() as usize).max().unwrap_or(0)
    }

    /// Leaf count per kind, in [`NodeKind::ALL`] order.
    pub fn kind_histogram(&self) -> [usize; 6] {
        let mut hist = [0; 6];
        for &l in &self.leaves {
            hist[self.nodes[l].kind as usize] += 1;
        }
        hist
    }

    /// Indented, human-readable dump.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        self.dump_node(0, 0, &mut out);
        out
    }

    fn dump_node(&self, id: usize, indent: usize, out: &mut String) {
        let n = &self.nodes[id];
        let _ = writeln!(
            out,
            "{:indent$}{} #{} width={} span=[{}, {}) k={}",
            "",
            n.kind,
            id,
            n.width,
            n.lo,
            n.hi,
            if n.is_leaf() { n.info_bits() } else { self.span_info_bits(id) },
            indent = indent * 2
        );
        if let Some((l, r)) = n.children {
            self.dump_node(l, indent + 1, out);
            self.dump_node(r, indent + 1, out);
        }
    }

    fn span_info_bits(&self, id: usize) -> usize {
        match self.nodes[id].children {
            Some((l, r)) => self.span_info_bits(l) + self.span_info_bits(r),
            None => self.nodes[id].info_bits(),
        }
    }
}
