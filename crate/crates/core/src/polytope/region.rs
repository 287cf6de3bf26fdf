//! Which coordinates can be nonzero on a row-shift-invariant system.
//!
//! A family is given by its forms at row offset 1; every shift of a member
//! down by any number of rows is also a member. Two facts are propagated to
//! a fixed point, each as a per-column row threshold:
//!
//! * nonnegativity: a member with a single positive coefficient bounds that
//!   coordinate below by coordinates already known to be nonnegative;
//! * vanishing: once every positive coordinate of a member is known to be
//!   zero, its negative coordinates (known nonnegative) are zero too.
//!
//! Both are consequences of the inequalities, so the region found contains
//! the support of every lattice point.

use std::collections::BTreeSet;

use crate::forms::FormSet;
use crate::zcrystal::{Ambient, Iota, Pos, ZVector};

const NEVER: i64 = i64::MAX / 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    /// Per column, the first row from which the coordinate is provably
    /// nonnegative, or `None`.
    pub nonneg_from: Vec<Option<usize>>,
    /// Per column, the first row from which the coordinate is provably zero,
    /// or `None`.
    pub zero_from: Vec<Option<usize>>,
}

impl Region {
    pub fn analyze(rank: usize, family: &FormSet) -> Region {
        let members: Vec<Vec<(i64, usize, i64)>> = family
            .iter()
            .filter(|f| !f.has_constant())
            .map(|f| {
                f.coeffs()
                    .iter()
                    .map(|&(p, c)| (p.row as i64, p.col - 1, c))
                    .collect()
            })
            .collect();

        let mut nn = vec![NEVER; rank];
        loop {
            let mut changed = false;
            for m in &members {
                let mut pos = m.iter().filter(|t| t.2 > 0);
                let (Some(&(r, c, _)), None) = (pos.next(), pos.next()) else {
                    continue;
                };
                let Some(j0) =
                    earliest_offset(m.iter().filter(|t| t.2 < 0).map(|t| (t.0, nn[t.1])))
                else {
                    continue;
                };
                let row = r + j0 - 1;
                if row < nn[c] {
                    nn[c] = row;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }

        let mut zero = vec![NEVER; rank];
        loop {
            let mut changed = false;
            for m in &members {
                let needs = m
                    .iter()
                    .map(|&(r, c, a)| (r, if a > 0 { zero[c] } else { nn[c] }));
                let Some(j0) = earliest_offset(needs) else {
                    continue;
                };
                for &(r, c, _) in m.iter().filter(|t| t.2 < 0) {
                    let row = r + j0 - 1;
                    if row < zero[c] {
                        zero[c] = row;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }

        let known = |v: i64| (v < NEVER).then_some(v.max(1) as usize);
        Region {
            nonneg_from: nn.into_iter().map(known).collect(),
            zero_from: zero.into_iter().map(known).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.zero_from.len()
    }

    /// Every coordinate is nonnegative and all but finitely many vanish.
    pub fn is_bounded(&self) -> bool {
        self.first_unbounded().is_none()
    }

    /// A coordinate whose sign or vanishing could not be established.
    /// Columns without any sign information come first, since vanishing
    /// elsewhere may hinge on them.
    pub fn first_unbounded(&self) -> Option<Pos> {
        let unsigned = (0..self.rank()).find(|&c| self.nonneg_from[c].is_none());
        if let Some(c) = unsigned {
            return Some(Pos::new(1, c + 1));
        }
        (0..self.rank()).find_map(|c| match (self.nonneg_from[c], self.zero_from[c]) {
            (Some(1), Some(_)) => None,
            (Some(r), _) if r > 1 => Some(Pos::new(r - 1, c + 1)),
            _ => Some(Pos::new(1, c + 1)),
        })
    }

    /// Number of coordinates not forced to vanish, if finite.
    pub fn nonzero_count(&self) -> Option<usize> {
        self.zero_from.iter().map(|z| z.map(|z| z - 1)).sum()
    }

    /// Last row carrying a possibly nonzero coordinate.
    pub fn row_cutoff(&self) -> Option<usize> {
        self.zero_from
            .iter()
            .map(|z| z.map(|z| z - 1))
            .collect::<Option<Vec<_>>>()?
            .into_iter()
            .max()
    }

    pub fn may_be_nonzero(&self, p: Pos) -> bool {
        self.zero_from[p.col - 1].map_or(true, |z| p.row < z)
    }

    /// The possibly nonzero coordinates in row-major order; empty when the
    /// region is unbounded.
    pub fn positions(&self) -> Vec<Pos> {
        let Some(rows) = self.row_cutoff() else {
            return Vec::new();
        };
        (1..=rows)
            .flat_map(|j| (1..=self.rank()).map(move |i| Pos::new(j, i)))
            .filter(|&p| self.may_be_nonzero(p))
            .collect()
    }
}

/// Least row offset `j ≥ 1` with `r + j − 1 ≥ t` for each `(r, t)`, or
/// `None` if some threshold is unknown.
fn earliest_offset(needs: impl Iterator<Item = (i64, i64)>) -> Option<i64> {
    let mut j0 = 1;
    for (r, t) in needs {
        if t >= NEVER {
            return None;
        }
        j0 = j0.max(t - r + 1);
    }
    Some(j0)
}

/// The lowest weight element of the crystal of highest weight `ρ`, reached
/// by applying `f̃_i` while any is defined.
pub fn lowest_weight_element(iota: &Iota) -> ZVector {
    let n = iota.rank();
    let ambient = Ambient::Tensor(crate::rootdata::Weight(vec![1; n]));
    let mut x = ZVector::zero(n);
    while let Some(y) = (1..=n).find_map(|i| iota.f_tilde(&x, &ambient, i)) {
        x = y;
    }
    x
}

/// Support of [`lowest_weight_element`]. Every coordinate that can be
/// nonzero on `B(∞)` is nonzero there.
pub fn lowest_weight_support(iota: &Iota) -> BTreeSet<Pos> {
    lowest_weight_element(iota)
        .nonzero()
        .map(|(p, _)| p)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::LinearForm;
    use crate::rootdata::{cartan_matrix, TypeLabel};

    fn family(rank: usize, forms: &[&str]) -> FormSet {
        forms
            .iter()
            .map(|s| LinearForm::parse(s, rank, Some(1)).unwrap())
            .collect()
    }

    #[test]
    fn a1_keeps_one_coordinate() {
        let r = Region::analyze(1, &family(1, &["x_{j;1}", "-x_{j+1;1}"]));
        assert_eq!(r.nonneg_from, vec![Some(1)]);
        assert_eq!(r.zero_from, vec![Some(2)]);
        assert_eq!(r.nonzero_count(), Some(1));
        assert_eq!(r.positions(), vec![Pos::new(1, 1)]);
    }

    #[test]
    fn chains_propagate_nonnegativity() {
        // x_{j;2} ≥ x_{j+1;1} ≥ 0 needs the second column to wait for the first.
        let r = Region::analyze(2, &family(2, &["x_{j;1}", "x_{j;2}-x_{j+1;1}"]));
        assert_eq!(r.nonneg_from, vec![Some(1), Some(1)]);
        assert_eq!(r.zero_from, vec![None, None]);
        assert!(!r.is_bounded());
        assert_eq!(r.nonzero_count(), None);
    }

    #[test]
    fn missing_sign_information_is_reported() {
        let r = Region::analyze(2, &family(2, &["x_{j;1}"]));
        assert_eq!(r.nonneg_from[1], None);
        assert_eq!(r.first_unbounded(), Some(Pos::new(1, 2)));
    }

    #[test]
    fn lowest_weight_support_has_one_coordinate_per_positive_root() {
        for (label, n, roots) in [
            (TypeLabel::A, 3, 6),
            (TypeLabel::B, 2, 4),
            (TypeLabel::G2, 2, 6),
        ] {
            let iota = Iota::new(cartan_matrix(label, n).unwrap());
            assert_eq!(
                lowest_weight_support(&iota).len(),
                roots,
                "{}",
                label.name(n)
            );
        }
    }
}
