//! The realization polyhedra: assembly from tables or closure, membership,
//! lattice-point enumeration and the verification harness.

mod enumerate;
mod region;
mod verify;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::forms::{
    ample_witnesses, check_strict_positivity, closure, lambda_form, positivity_witnesses, xi_form,
    Closure, FormSet, LinearForm, Operator,
};
use crate::limits::Limits;
use crate::rootdata::{longest_word_length, CartanDatum, TypeLabel, Weight};
use crate::tables;
use crate::zcrystal::{Iota, Pos, ZVector};

pub use region::{lowest_weight_element, lowest_weight_support, Region};
pub use verify::{
    check_crystal_axioms, check_table_against_closure, verify, CheckResult, CheckStatus,
    VerifyReport,
};

/// Which crystal a polyhedron realizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    Binf,
    Blambda(Weight),
}

impl Object {
    pub fn name(&self) -> &'static str {
        match self {
            Object::Binf => "binf",
            Object::Blambda(_) => "blambda",
        }
    }

    pub fn lambda(&self) -> Option<&Weight> {
        match self {
            Object::Binf => None,
            Object::Blambda(l) => Some(l),
        }
    }
}

/// Where the defining forms come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Source {
    /// Closed-form families and bundled tables.
    Table,
    /// Operator closure of the coordinate functions.
    Closure,
}

impl Source {
    pub const ALL: [Source; 2] = [Source::Table, Source::Closure];

    pub fn as_str(self) -> &'static str {
        match self {
            Source::Table => "table",
            Source::Closure => "closure",
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Source {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "table" => Ok(Source::Table),
            "closure" => Ok(Source::Closure),
            _ => Err(Error::Invalid(format!(
                "unknown source `{s}` (expected table or closure)"
            ))),
        }
    }
}

/// A system of inequalities cutting out a realization.
///
/// The `B(∞)` part is stored as a row-shift-invariant `family` at offset 1;
/// the forms carrying `λ` live in `lambda_forms` at fixed positions.
#[derive(Clone, Debug)]
pub struct Polyhedron {
    iota: Iota,
    object: Object,
    source: Source,
    family: FormSet,
    lambda_forms: FormSet,
    region: Region,
}

impl Polyhedron {
    pub fn iota(&self) -> &Iota {
        &self.iota
    }

    pub fn cartan(&self) -> &CartanDatum {
        self.iota.cartan()
    }

    pub fn object(&self) -> &Object {
        &self.object
    }

    pub fn source(&self) -> Source {
        self.source
    }

    /// The shift-invariant forms at row offset 1.
    pub fn family(&self) -> &FormSet {
        &self.family
    }

    /// Forms with a `λ` constant; empty for `B(∞)`.
    pub fn lambda_forms(&self) -> &FormSet {
        &self.lambda_forms
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    /// Last row that can carry a nonzero coordinate.
    pub fn row_cutoff(&self) -> usize {
        self.region
            .row_cutoff()
            .expect("built polyhedra are bounded")
    }

    /// The family instantiated at offsets `1..=rows`.
    pub fn family_instances(&self, rows: usize) -> FormSet {
        instantiate(&self.family, rows)
    }

    /// The finite system: family instances up to the row cutoff together
    /// with the `λ` forms, constants kept symbolic. Instances at larger
    /// offsets only involve coordinates that vanish.
    pub fn forms(&self) -> FormSet {
        self.family_instances(self.row_cutoff())
            .union(&self.lambda_forms)
    }

    /// Whether `x` satisfies every form. Instances of the family at offsets
    /// past the last row of `x` vanish there, so the test is finite.
    pub fn contains(&self, x: &ZVector) -> bool {
        let lambda = self.object.lambda();
        let rows = x.max_row().max(1);
        self.lambda_forms.iter().all(|f| f.eval(x, lambda) >= 0)
            && (0..rows as i64).all(|d| {
                self.family
                    .iter()
                    .all(|f| f.shift_rows(d).expect("downward shift").eval(x, lambda) >= 0)
            })
    }

    /// Number of coordinates not forced to vanish.
    pub fn nonzero_coordinate_count(&self) -> usize {
        self.region
            .nonzero_count()
            .expect("built polyhedra are bounded")
    }

    pub fn nonzero_positions(&self) -> Vec<Pos> {
        self.region.positions()
    }
}

/// Builds the realization of `object` from the requested source.
///
/// For `B(λ)` the `λ` forms are `λ_i + ψ` over the per-node families when
/// strict positivity holds, and otherwise the hatted closure of the
/// coordinates and the `λ^(i)`.
pub fn build(
    cartan: &CartanDatum,
    object: Object,
    source: Source,
    limits: &Limits,
) -> Result<Polyhedron> {
    let iota = Iota::new(cartan.clone());
    if let Object::Blambda(l) = &object {
        cartan.check_weight(l)?;
        if !l.is_dominant() {
            return Err(Error::NotDominant(l.0.clone()));
        }
    }
    let family = match source {
        Source::Table => tables::binf_family(cartan.type_label, cartan.rank)?.base_forms(),
        Source::Closure => closure_family(&iota, limits)?,
    };
    let bad = positivity_witnesses(&family);
    if !bad.is_empty() {
        return Err(Error::Positivity(bad));
    }
    let region = Region::analyze(cartan.rank, &family);
    if let Some(p) = region.first_unbounded() {
        return Err(Error::Unbounded {
            row: p.row,
            col: p.col,
        });
    }
    let lambda_forms = match &object {
        Object::Binf => FormSet::new(),
        Object::Blambda(lambda) => {
            let per_node = match source {
                Source::Table => tables::xi_first_tables(cartan.type_label, cartan.rank)?,
                Source::Closure => xi_closures(&iota, limits)?,
            };
            let instances = instantiate(&family, region.row_cutoff().unwrap_or(1));
            let forms = if check_strict_positivity(&iota, &instances, &per_node) {
                lift_per_node(&per_node)
            } else {
                direct_hat_closure(&iota, &region, limits)?
            };
            let bad = ample_witnesses(&forms, lambda);
            if !bad.is_empty() {
                return Err(Error::NotAmple(bad));
            }
            forms
        }
    };
    Ok(Polyhedron {
        iota,
        object,
        source,
        family,
        lambda_forms,
        region,
    })
}

fn instantiate(family: &FormSet, rows: usize) -> FormSet {
    (0..rows as i64)
        .flat_map(|d| {
            family
                .iter()
                .map(move |f| f.shift_rows(d).expect("downward shift"))
        })
        .collect()
}

/// Rows available to a closure started in row 1. Generous: the supports of
/// the finite-type families stay within the zero-forcing cutoff plus a row.
pub fn closure_row_bound(iota: &Iota) -> Result<usize> {
    Ok(4 * longest_word_length(iota.cartan())? + 8)
}

fn bounded_closure(iota: &Iota, gens: &FormSet, op: Operator, limits: &Limits) -> Result<Closure> {
    let rows = closure_row_bound(iota)?;
    let c = closure(iota, gens, op, rows * iota.rank(), limits.closure_cap)?;
    if c.truncated {
        return Err(Error::Invalid(format!(
            "closure left the first {rows} rows without stabilizing"
        )));
    }
    Ok(c)
}

/// A shift-invariant family closed under the `S_k` whose lattice points are
/// all nonnegative, which is enough for it to cut out `B(∞)`.
///
/// Starts from the closure of `x_{1;1}` and adds `x_{1;c}` for the first
/// column whose nonnegativity the region analysis cannot derive, until every
/// column is covered. The full closure of all coordinates is far larger
/// (for `E_8` it runs into the millions) without cutting anything more.
pub fn closure_family(iota: &Iota, limits: &Limits) -> Result<FormSet> {
    let n = iota.rank();
    let mut gens: FormSet = [LinearForm::coordinate(n, Pos::new(1, 1))]
        .into_iter()
        .collect();
    loop {
        let c = bounded_closure(iota, &gens, Operator::S, limits)?;
        if !c.violations.is_empty() {
            return Err(Error::Positivity(
                c.violations.into_iter().map(|v| v.form).collect(),
            ));
        }
        let region = Region::analyze(n, &c.forms);
        let Some(p) = region.first_unbounded() else {
            return Ok(c.forms);
        };
        let extra = LinearForm::coordinate(n, Pos::new(1, p.col));
        if region.nonneg_from[p.col - 1] == Some(1) || !gens.insert(extra) {
            return Err(Error::Unbounded {
                row: p.row,
                col: p.col,
            });
        }
    }
}

/// Generators used by [`closure_family`] beyond `x_{1;1}`, for reporting.
pub fn closure_family_extra_columns(iota: &Iota, limits: &Limits) -> Result<Vec<usize>> {
    let fam = closure_family(iota, limits)?;
    let n = iota.rank();
    Ok((2..=n)
        .filter(|&c| fam.contains(&LinearForm::coordinate(n, Pos::new(1, c))))
        .collect())
}

/// The `S`-closure of `{x_{j;1} : j ≤ rows}`.
pub fn first_column_closure(iota: &Iota, rows: usize, limits: &Limits) -> Result<Closure> {
    let n = iota.rank();
    let gens: FormSet = (1..=rows)
        .map(|j| LinearForm::coordinate(n, Pos::new(j, 1)))
        .collect();
    bounded_closure(iota, &gens, Operator::S, limits)
}

/// The `S`-closure of each `ξ^(i)`. Index `i − 1` holds node `i`.
pub fn xi_closures(iota: &Iota, limits: &Limits) -> Result<Vec<FormSet>> {
    (1..=iota.rank())
        .map(|i| {
            let gens: FormSet = [xi_form(iota, i)].into_iter().collect();
            Ok(bounded_closure(iota, &gens, Operator::S, limits)?.forms)
        })
        .collect()
}

/// `{λ_i + ψ : ψ ∈ per_node[i − 1]}`.
pub fn lift_per_node(per_node: &[FormSet]) -> FormSet {
    let mut out = FormSet::new();
    for (idx, fam) in per_node.iter().enumerate() {
        for f in fam {
            let mut lambda = f.lambda_part().to_vec();
            lambda[idx] += 1;
            out.insert(f.clone().with_constant(lambda, f.absolute()));
        }
    }
    out
}

/// The hatted closure of the `λ^(i)` alone.
pub fn lambda_hat_closure(iota: &Iota, limits: &Limits) -> Result<FormSet> {
    let gens: FormSet = (1..=iota.rank()).map(|i| lambda_form(iota, i)).collect();
    Ok(bounded_closure(iota, &gens, Operator::SHat, limits)?.forms)
}

/// The hatted closure of the `λ^(i)` and every coordinate in the region's
/// rows. Used only when strict positivity fails.
fn direct_hat_closure(iota: &Iota, region: &Region, limits: &Limits) -> Result<FormSet> {
    let n = iota.rank();
    let rows = region.row_cutoff().unwrap_or(1);
    let mut gens: FormSet = (1..=n).map(|i| lambda_form(iota, i)).collect();
    gens.extend(
        (1..=rows).flat_map(|j| (1..=n).map(move |c| LinearForm::coordinate(n, Pos::new(j, c)))),
    );
    Ok(bounded_closure(iota, &gens, Operator::SHat, limits)?.forms)
}

/// Whether `(label, rank)` has a closed-form `B(∞)` family.
pub fn has_binf_table(label: TypeLabel, rank: usize) -> bool {
    tables::binf_family(label, rank).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::cartan_matrix;

    fn poly(label: TypeLabel, n: usize, object: Object, source: Source) -> Polyhedron {
        build(
            &cartan_matrix(label, n).unwrap(),
            object,
            source,
            &Limits::default(),
        )
        .unwrap()
    }

    fn v(n: usize, entries: &[((usize, usize), i64)]) -> ZVector {
        ZVector::from_entries(n, entries.iter().map(|&((j, i), c)| (Pos::new(j, i), c)))
    }

    #[test]
    fn b2_membership() {
        for source in Source::ALL {
            let p = poly(TypeLabel::B, 2, Object::Binf, source);
            assert!(p.contains(&ZVector::zero(2)));
            assert!(!p.contains(&v(2, &[((2, 1), 1)])));
            assert!(p.contains(&v(2, &[((1, 2), 1), ((2, 1), 1)])));
            assert!(!p.contains(&v(2, &[((3, 1), 1)])));
        }
    }

    #[test]
    fn b2_region_has_four_coordinates() {
        let p = poly(TypeLabel::B, 2, Object::Binf, Source::Table);
        assert_eq!(
            p.nonzero_positions(),
            vec![
                Pos::new(1, 1),
                Pos::new(1, 2),
                Pos::new(2, 1),
                Pos::new(2, 2)
            ]
        );
        assert_eq!(p.row_cutoff(), 2);
    }

    #[test]
    fn blambda_forms_carry_constants() {
        let l = Weight(vec![0, 1]);
        let p = poly(TypeLabel::B, 2, Object::Blambda(l), Source::Table);
        assert!(!p.lambda_forms().is_empty());
        assert!(p.lambda_forms().iter().all(|f| f.has_constant()));
        assert!(p.contains(&ZVector::zero(2)));
        assert!(!p.contains(&v(2, &[((1, 1), 1)])));
    }

    #[test]
    fn missing_tables_point_to_closure() {
        let c = cartan_matrix(TypeLabel::G2, 2).unwrap();
        let err = build(&c, Object::Binf, Source::Table, &Limits::default()).unwrap_err();
        assert!(err.to_string().contains("closure"));
        assert!(build(&c, Object::Binf, Source::Closure, &Limits::default()).is_ok());
    }

    #[test]
    fn rejects_bad_weights() {
        let c = cartan_matrix(TypeLabel::B, 2).unwrap();
        let lim = Limits::default();
        assert!(build(&c, Object::Blambda(Weight(vec![1])), Source::Table, &lim).is_err());
        assert!(build(
            &c,
            Object::Blambda(Weight(vec![-1, 0])),
            Source::Table,
            &lim
        )
        .is_err());
    }
}
