//! Cartan data for the finite simple types, positive roots and the Weyl
//! dimension formula.
//!
//! Nodes are numbered from 1 in every public signature. The matrix entry
//! `a(i, j)` is the pairing of the coroot `h_i` with the simple root `α_j`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, Integer, One, Rational64, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Positive roots are capped while closing the root system; every finite type
/// we support stays far below this.
const ROOT_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    F4,
    E6,
    E7,
    E8,
    G2,
}

impl TypeLabel {
    pub const ALL: [TypeLabel; 9] = [
        TypeLabel::A,
        TypeLabel::B,
        TypeLabel::C,
        TypeLabel::D,
        TypeLabel::F4,
        TypeLabel::E6,
        TypeLabel::E7,
        TypeLabel::E8,
        TypeLabel::G2,
    ];

    /// The rank forced by the label, for the exceptional types.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            TypeLabel::F4 => Some(4),
            TypeLabel::E6 => Some(6),
            TypeLabel::E7 => Some(7),
            TypeLabel::E8 => Some(8),
            TypeLabel::G2 => Some(2),
            _ => None,
        }
    }

    /// `B3`, `F4`: the label with the rank appended for classical types.
    pub fn name(self, rank: usize) -> String {
        match self.fixed_rank() {
            Some(_) => self.as_str().to_string(),
            None => format!("{}{rank}", self.as_str()),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TypeLabel::A => "A",
            TypeLabel::B => "B",
            TypeLabel::C => "C",
            TypeLabel::D => "D",
            TypeLabel::F4 => "F4",
            TypeLabel::E6 => "E6",
            TypeLabel::E7 => "E7",
            TypeLabel::E8 => "E8",
            TypeLabel::G2 => "G2",
        }
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TypeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        TypeLabel::ALL
            .into_iter()
            .find(|t| t.as_str() == upper)
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }
}

/// A weight in the fundamental-weight basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The fundamental weight of node `i` (1-based).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = vec![0; rank];
        w[i - 1] = 1;
        Weight(w)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Coefficient of the fundamental weight of node `i` (1-based).
    pub fn at(&self, i: usize) -> i64 {
        self.0[i - 1]
    }
}

/// An element of the root lattice in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanDatum {
    pub type_label: TypeLabel,
    pub rank: usize,
    pub matrix: Vec<Vec<i64>>,
    pub symmetrizer: Vec<i64>,
}

impl CartanDatum {
    /// Builds a datum from an explicit matrix, checking the Cartan axioms and
    /// computing the minimal symmetrizer.
    pub fn from_matrix(type_label: TypeLabel, matrix: Vec<Vec<i64>>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::Invalid(
                "Cartan matrix must be square and nonempty".into(),
            ));
        }
        for i in 0..n {
            if matrix[i][i] != 2 {
                return Err(Error::Invalid(format!("diagonal entry {} is not 2", i + 1)));
            }
            for j in 0..n {
                if i != j && (matrix[i][j] > 0 || (matrix[i][j] == 0) != (matrix[j][i] == 0)) {
                    return Err(Error::Invalid(format!(
                        "off-diagonal entries ({}, {}) violate the Cartan sign rules",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let symmetrizer = symmetrizer(&matrix)?;
        Ok(CartanDatum {
            type_label,
            rank: n,
            matrix,
            symmetrizer,
        })
    }

    /// `⟨h_i, α_j⟩` with 1-based nodes.
    #[inline]
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.matrix[i - 1][j - 1]
    }

    /// Nodes joined to `i` in the Dynkin diagram.
    pub fn neighbours(&self, i: usize) -> Vec<usize> {
        (1..=self.rank)
            .filter(|&j| j != i && self.a(i, j) != 0)
            .collect()
    }

    /// `⟨h_i, β⟩` for `β` given in the simple-root basis.
    pub fn pair_root(&self, i: usize, beta: &[i64]) -> i64 {
        self.matrix[i - 1]
            .iter()
            .zip(beta)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Converts a root-lattice element to fundamental-weight coordinates.
    pub fn root_to_weight(&self, beta: &[i64]) -> Vec<i64> {
        (1..=self.rank).map(|i| self.pair_root(i, beta)).collect()
    }

    pub fn check_weight(&self, lambda: &Weight) -> Result<()> {
        if lambda.rank() != self.rank {
            return Err(Error::WeightLength {
                expected: self.rank,
                got: lambda.rank(),
            });
        }
        Ok(())
    }

    /// `λ − w₀λ` in the simple-root basis: the root content of the lowest
    /// weight of `V(λ)` below its highest weight.
    pub fn lowest_weight_depth(&self, lambda: &Weight) -> Result<Vec<i64>> {
        self.check_weight(lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.0.clone()));
        }
        let n = self.rank;
        let mut mu = lambda.0.clone();
        let mut depth = vec![0i64; n];
        let mut steps = 0usize;
        while let Some(i) = (0..n).find(|&i| mu[i] > 0) {
            let m = mu[i];
            depth[i] += m;
            for (j, mj) in mu.iter_mut().enumerate() {
                *mj -= m * self.matrix[j][i];
            }
            steps += 1;
            if steps > ROOT_CAP {
                return Err(Error::NotFinite(ROOT_CAP));
            }
        }
        Ok(depth)
    }
}

/// Returns the Cartan matrix for `(label, rank)` under the node conventions
/// used throughout the crate.
pub fn cartan_matrix(label: TypeLabel, rank: usize) -> Result<CartanDatum> {
    let invalid = Error::InvalidType { label, rank };
    let min_rank = match label {
        TypeLabel::A => 1,
        TypeLabel::B | TypeLabel::C => 2,
        TypeLabel::D => 4,
        _ => 0,
    };
    if let Some(r) = label.fixed_rank() {
        if rank != r {
            return Err(invalid);
        }
    } else if rank < min_rank {
        return Err(invalid);
    }

    let n = rank;
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut join = |i: usize, j: usize, aij: i64, aji: i64| {
        m[i - 1][j - 1] = aij;
        m[j - 1][i - 1] = aji;
    };
    match label {
        TypeLabel::A => (1..n).for_each(|i| join(i, i + 1, -1, -1)),
        TypeLabel::B => {
            (1..n - 1).for_each(|i| join(i, i + 1, -1, -1));
            join(n - 1, n, -1, -2);
        }
        TypeLabel::C => {
            (1..n - 1).for_each(|i| join(i, i + 1, -1, -1));
            join(n - 1, n, -2, -1);
        }
        TypeLabel::D => {
            (1..n - 1).for_each(|i| join(i, i + 1, -1, -1));
            join(n - 2, n, -1, -1);
        }
        TypeLabel::F4 => {
            join(1, 2, -1, -1);
            join(2, 3, -2, -1);
            join(3, 4, -1, -1);
        }
        TypeLabel::E6 => {
            (1..5).for_each(|i| join(i, i + 1, -1, -1));
            join(3, 6, -1, -1);
        }
        TypeLabel::E7 => {
            (1..6).for_each(|i| join(i, i + 1, -1, -1));
            join(4, 7, -1, -1);
        }
        TypeLabel::E8 => {
            (1..7).for_each(|i| join(i, i + 1, -1, -1));
            join(5, 8, -1, -1);
        }
        TypeLabel::G2 => join(1, 2, -1, -3),
    }
    CartanDatum::from_matrix(label, m)
}

fn symmetrizer(m: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = m.len();
    let mut d: Vec<Option<Rational64>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rational64::one());
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].unwrap();
            for j in 0..n {
                if i == j || m[i][j] == 0 {
                    continue;
                }
                // d_i a_ij = d_j a_ji
                let dj = di * Rational64::new(m[i][j], m[j][i]);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        queue.push_back(j);
                    }
                    Some(existing) if existing != dj => return Err(Error::NotSymmetrizable),
                    Some(_) => {}
                }
            }
        }
    }
    let d: Vec<Rational64> = d.into_iter().map(Option::unwrap).collect();
    let lcm = d.iter().fold(1i64, |acc, r| acc.lcm(r.denom()));
    let ints: Vec<i64> = d.iter().map(|r| (r * lcm).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    Ok(ints.into_iter().map(|x| x / g).collect())
}

/// All positive roots, sorted by height and then lexicographically.
pub fn positive_roots(cartan: &CartanDatum) -> Result<Vec<Root>> {
    let n = cartan.rank;
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 1..=n {
            let p = cartan.pair_root(i, &beta);
            if p == 0 {
                continue;
            }
            let mut image = beta.clone();
            image[i - 1] -= p;
            if image.iter().all(|&c| c >= 0) && !seen.contains(&image) {
                if seen.len() >= ROOT_CAP {
                    return Err(Error::NotFinite(ROOT_CAP));
                }
                seen.insert(image.clone());
                queue.push_back(image);
            }
        }
    }
    let mut roots: Vec<Root> = seen.into_iter().map(Root).collect();
    roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
    Ok(roots)
}

/// Length of the longest element of the Weyl group.
pub fn longest_word_length(cartan: &CartanDatum) -> Result<usize> {
    Ok(positive_roots(cartan)?.len())
}

/// Dimension of the irreducible module of highest weight `lambda`.
pub fn weyl_dim(cartan: &CartanDatum, lambda: &Weight) -> Result<BigInt> {
    cartan.check_weight(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.0.clone()));
    }
    let d = &cartan.symmetrizer;
    let mut dim = BigRational::one();
    for root in positive_roots(cartan)? {
        // (Λ_i, α_j) = d_j δ_ij under the symmetrized pairing.
        let mut num = BigInt::zero();
        let mut den = BigInt::zero();
        for (j, &c) in root.0.iter().enumerate() {
            num += BigInt::from(c * d[j] * (lambda.0[j] + 1));
            den += BigInt::from(c * d[j]);
        }
        dim *= BigRational::new(num, den);
    }
    debug_assert!(dim.is_integer() && dim.is_positive());
    Ok(dim.to_integer())
}

/// [`weyl_dim`] narrowed to `u64`, for sizes that are compared with
/// enumerated sets.
pub fn weyl_dim_u64(cartan: &CartanDatum, lambda: &Weight) -> Result<u64> {
    weyl_dim(cartan, lambda)?
        .to_u64()
        .ok_or_else(|| Error::Invalid("dimension does not fit in 64 bits".into()))
}
