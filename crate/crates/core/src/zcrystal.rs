//! The crystal structure on finitely supported integer sequences indexed by
//! the cyclic word `(…, n, …, 2, 1)`, plain and tensored with a one-element
//! crystal of weight `λ`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::rootdata::{CartanDatum, Weight};

/// A position `(j; i)`: row `j ≥ 1`, column `i ∈ [1, n]`. Ordered row-major,
/// which agrees with the order of flat indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub row: usize,
    pub col: usize,
}

impl Pos {
    pub const fn new(row: usize, col: usize) -> Self {
        Pos { row, col }
    }

    /// Flat index `k = (j − 1)·n + i`.
    #[inline]
    pub fn flat(self, n: usize) -> usize {
        (self.row - 1) * n + self.col
    }

    #[inline]
    pub fn from_flat(k: usize, n: usize) -> Self {
        Pos {
            row: (k - 1) / n + 1,
            col: (k - 1) % n + 1,
        }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{})", self.row, self.col)
    }
}

/// A finitely supported integer vector. Stored densely over flat indices with
/// trailing zeros trimmed, so structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZVector {
    rank: usize,
    entries: Vec<i64>,
}

impl ZVector {
    pub fn zero(rank: usize) -> Self {
        ZVector {
            rank,
            entries: Vec::new(),
        }
    }

    pub fn from_entries(rank: usize, entries: impl IntoIterator<Item = (Pos, i64)>) -> Self {
        let mut v = ZVector::zero(rank);
        for (p, c) in entries {
            v.add_at(p.flat(rank), c);
        }
        v
    }

    /// Builds a vector from a dense slice over flat indices `1..=len`.
    pub fn from_flat(rank: usize, dense: &[i64]) -> Self {
        let mut v = ZVector {
            rank,
            entries: dense.to_vec(),
        };
        v.trim();
        v
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// One past the largest flat index that may be nonzero.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Dense view over flat indices `1..=len()`.
    pub fn as_flat(&self) -> &[i64] {
        &self.entries
    }

    #[inline]
    pub fn at(&self, k: usize) -> i64 {
        self.entries.get(k - 1).copied().unwrap_or(0)
    }

    pub fn get(&self, p: Pos) -> i64 {
        self.at(p.flat(self.rank))
    }

    /// Largest row carrying a nonzero entry, 0 for the zero vector.
    pub fn max_row(&self) -> usize {
        if self.entries.is_empty() {
            0
        } else {
            (self.entries.len() - 1) / self.rank + 1
        }
    }

    pub fn add_at(&mut self, k: usize, delta: i64) {
        if self.entries.len() < k {
            self.entries.resize(k, 0);
        }
        self.entries[k - 1] += delta;
        self.trim();
    }

    pub fn set(&mut self, p: Pos, value: i64) {
        let k = p.flat(self.rank);
        let old = self.at(k);
        self.add_at(k, value - old);
    }

    fn trim(&mut self) {
        while self.entries.last() == Some(&0) {
            self.entries.pop();
        }
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (Pos, i64)> + '_ {
        let n = self.rank;
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(k, &c)| (Pos::from_flat(k + 1, n), c))
    }

    /// Sum of all entries.
    pub fn total(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// Column sums, i.e. the negative of the weight in the simple-root basis.
    pub fn content(&self) -> Vec<i64> {
        let mut c = vec![0; self.rank];
        for (k, &x) in self.entries.iter().enumerate() {
            c[k % self.rank] += x;
        }
        c
    }
}

impl fmt::Display for ZVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (idx, (p, c)) in self.nonzero().enumerate() {
            if idx > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}:{c}")?;
        }
        f.write_str("}")
    }
}

/// Which crystal structure a vector carries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ambient {
    Plain,
    /// Tensored with the one-element crystal of weight `λ` (dominant).
    Tensor(Weight),
}

impl Ambient {
    fn lambda_at(&self, i: usize) -> i64 {
        match self {
            Ambient::Plain => 0,
            Ambient::Tensor(l) => l.at(i),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CrystalNode {
    pub vector: ZVector,
    pub ambient: Ambient,
}

impl CrystalNode {
    pub fn f_tilde(&self, iota: &Iota, i: usize) -> Option<CrystalNode> {
        iota.f_tilde(&self.vector, &self.ambient, i)
            .map(|vector| CrystalNode {
                vector,
                ambient: self.ambient.clone(),
            })
    }

    pub fn e_tilde(&self, iota: &Iota, i: usize) -> Option<CrystalNode> {
        iota.e_tilde(&self.vector, &self.ambient, i)
            .map(|vector| CrystalNode {
                vector,
                ambient: self.ambient.clone(),
            })
    }

    pub fn weight(&self, iota: &Iota) -> Weight {
        iota.weight(&self.vector, &self.ambient)
    }

    pub fn epsilon(&self, iota: &Iota, i: usize) -> i64 {
        iota.epsilon(&self.vector, &self.ambient, i)
    }

    pub fn phi(&self, iota: &Iota, i: usize) -> i64 {
        iota.phi(&self.vector, &self.ambient, i)
    }
}

/// `σ^(i)` together with the extreme positions attaining it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SigmaMax {
    pub value: i64,
    /// Smallest flat index with `i_k = i` attaining the maximum.
    pub min_pos: usize,
    /// Largest such index; only meaningful when `value > 0`, since otherwise
    /// every position beyond the support attains it.
    pub max_pos: usize,
}

/// The cyclic index sequence for a Cartan datum: position `k` carries node
/// `((k − 1) mod n) + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iota {
    cartan: CartanDatum,
}

impl Iota {
    pub fn new(cartan: CartanDatum) -> Self {
        Iota { cartan }
    }

    pub fn cartan(&self) -> &CartanDatum {
        &self.cartan
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.cartan.rank
    }

    /// `i_k`.
    #[inline]
    pub fn node(&self, k: usize) -> usize {
        (k - 1) % self.rank() + 1
    }

    /// `k⁺`, the next position carrying the same node.
    #[inline]
    pub fn next(&self, k: usize) -> usize {
        k + self.rank()
    }

    /// `k⁻`, the previous position carrying the same node, or 0.
    #[inline]
    pub fn prev(&self, k: usize) -> usize {
        if k > self.rank() {
            k - self.rank()
        } else {
            0
        }
    }

    pub fn flat(&self, p: Pos) -> usize {
        p.flat(self.rank())
    }

    pub fn pos(&self, k: usize) -> Pos {
        Pos::from_flat(k, self.rank())
    }

    fn check_node(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank() {
            return Err(Error::NodeOutOfRange {
                node: i,
                rank: self.rank(),
            });
        }
        Ok(())
    }

    /// `σ_k(x) = x_k + Σ_{j>k} ⟨h_{i_k}, α_{i_j}⟩ x_j`.
    pub fn sigma(&self, x: &ZVector, k: usize) -> i64 {
        let i = self.node(k);
        let mut s = x.at(k);
        for j in k + 1..=x.len() {
            s += self.cartan.a(i, self.node(j)) * x.at(j);
        }
        s
    }

    pub fn sigma_max(&self, x: &ZVector, i: usize) -> SigmaMax {
        let n = self.rank();
        let sentinel = x.max_row() * n + i;
        let mut best = SigmaMax {
            value: 0,
            min_pos: sentinel,
            max_pos: sentinel,
        };
        let mut tail = 0i64;
        for k in (1..=x.max_row() * n).rev() {
            let node = self.node(k);
            let xk = x.at(k);
            if node == i {
                let s = xk + tail;
                if s > best.value {
                    best = SigmaMax {
                        value: s,
                        min_pos: k,
                        max_pos: k,
                    };
                } else if s == best.value {
                    best.min_pos = k;
                }
            }
            tail += self.cartan.a(i, node) * xk;
        }
        best
    }

    fn plain_phi(&self, x: &ZVector, i: usize) -> i64 {
        let content = x.content();
        -self.cartan.pair_root(i, &content) + self.sigma_max(x, i).value
    }

    pub fn f_tilde(&self, x: &ZVector, ambient: &Ambient, i: usize) -> Option<ZVector> {
        if let Ambient::Tensor(_) = ambient {
            if self.plain_phi(x, i) + ambient.lambda_at(i) <= 0 {
                return None;
            }
        }
        let m = self.sigma_max(x, i);
        let mut y = x.clone();
        y.add_at(m.min_pos, 1);
        Some(y)
    }

    pub fn e_tilde(&self, x: &ZVector, ambient: &Ambient, i: usize) -> Option<ZVector> {
        if let Ambient::Tensor(_) = ambient {
            if self.plain_phi(x, i) < -ambient.lambda_at(i) {
                return None;
            }
        }
        let m = self.sigma_max(x, i);
        if m.value <= 0 {
            return None;
        }
        let mut y = x.clone();
        y.add_at(m.max_pos, -1);
        Some(y)
    }

    /// Weight in the fundamental-weight basis.
    pub fn weight(&self, x: &ZVector, ambient: &Ambient) -> Weight {
        let content = x.content();
        Weight(
            (1..=self.rank())
                .map(|i| ambient.lambda_at(i) - self.cartan.pair_root(i, &content))
                .collect(),
        )
    }

    pub fn epsilon(&self, x: &ZVector, ambient: &Ambient, i: usize) -> i64 {
        let eps = self.sigma_max(x, i).value;
        match ambient {
            Ambient::Plain => eps,
            Ambient::Tensor(l) => eps + (-l.at(i) - self.plain_phi(x, i)).max(0),
        }
    }

    pub fn phi(&self, x: &ZVector, ambient: &Ambient, i: usize) -> i64 {
        let phi = self.plain_phi(x, i);
        match ambient {
            Ambient::Plain => phi,
            Ambient::Tensor(l) => (phi + l.at(i)).max(0),
        }
    }

    /// Every vector reachable from 0 by at most `depth` applications of the
    /// plain `f̃_i`.
    pub fn generate_binf(&self, depth: usize) -> BTreeSet<ZVector> {
        let zero = ZVector::zero(self.rank());
        let mut seen = BTreeSet::from([zero.clone()]);
        let mut frontier = vec![zero];
        for _ in 0..depth {
            let mut next = Vec::new();
            for x in &frontier {
                for i in 1..=self.rank() {
                    let y = self
                        .f_tilde(x, &Ambient::Plain, i)
                        .expect("plain f̃ is total");
                    if seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        seen
    }

    /// The highest weight crystal of weight `lambda`, as the `f̃`-closure of 0
    /// in the tensored structure. Fails when more than `cap` vectors appear.
    pub fn generate_blambda(&self, lambda: &Weight, cap: usize) -> Result<BTreeSet<ZVector>> {
        Ok(self.crystal_graph(lambda, cap)?.nodes.into_iter().collect())
    }

    /// The full `f̃`-graph of the highest weight crystal of weight `lambda`.
    pub fn crystal_graph(&self, lambda: &Weight, cap: usize) -> Result<CrystalGraph> {
        self.cartan.check_weight(lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.0.clone()));
        }
        let ambient = Ambient::Tensor(lambda.clone());
        let zero = ZVector::zero(self.rank());
        let mut index: BTreeMap<ZVector, usize> = BTreeMap::from([(zero.clone(), 0)]);
        let mut order = vec![zero];
        let mut raw_edges = Vec::new();
        let mut head = 0;
        while head < order.len() {
            let x = order[head].clone();
            for i in 1..=self.rank() {
                if let Some(y) = self.f_tilde(&x, &ambient, i) {
                    let target = match index.get(&y) {
                        Some(&t) => t,
                        None => {
                            if order.len() >= cap {
                                return Err(Error::EnumerationCap(cap));
                            }
                            index.insert(y.clone(), order.len());
                            order.push(y);
                            order.len() - 1
                        }
                    };
                    raw_edges.push((head, i, target));
                }
            }
            head += 1;
        }
        // Renumber nodes in sorted order so the graph is canonical.
        let nodes: Vec<ZVector> = index.keys().cloned().collect();
        let rank_of: Vec<usize> = order
            .iter()
            .map(|v| nodes.binary_search(v).unwrap())
            .collect();
        let mut edges: Vec<(usize, usize, usize)> = raw_edges
            .into_iter()
            .map(|(s, i, t)| (rank_of[s], i, rank_of[t]))
            .collect();
        edges.sort_unstable();
        Ok(CrystalGraph { nodes, edges })
    }

    /// `f̃_i`, `ẽ_i` with a node check, for callers holding untrusted input.
    pub fn try_f_tilde(&self, x: &ZVector, ambient: &Ambient, i: usize) -> Result<Option<ZVector>> {
        self.check_node(i)?;
        Ok(self.f_tilde(x, ambient, i))
    }

    pub fn try_e_tilde(&self, x: &ZVector, ambient: &Ambient, i: usize) -> Result<Option<ZVector>> {
        self.check_node(i)?;
        Ok(self.e_tilde(x, ambient, i))
    }
}

/// A labelled digraph with nodes sorted and edges `(source, i, target)`
/// referring to node indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrystalGraph {
    pub nodes: Vec<ZVector>,
    pub edges: Vec<(usize, usize, usize)>,
}
