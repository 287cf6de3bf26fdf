//! Closed-form inequality families: the parametric `B_n`, `C_n`, `D_n`
//! families, admissible patterns for the spin nodes, and the bundled literal
//! tables for `F_4`, `E_6`, `E_7`, `E_8`.

mod parse;

use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::forms::{FormSet, LinearForm};
use crate::rootdata::TypeLabel;
use crate::zcrystal::Pos;

/// One family member: `form` at row offset `j = 1`, instantiated at every
/// offset in `rows` by shifting its support down by `j − 1` rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub form: LinearForm,
    /// The entry as originally printed; differs from `form` only for the
    /// recorded misprints.
    pub printed: LinearForm,
    pub rows: RangeInclusive<usize>,
}

impl TableEntry {
    fn exact(form: LinearForm, rows: RangeInclusive<usize>) -> Self {
        TableEntry {
            printed: form.clone(),
            form,
            rows,
        }
    }

    pub fn is_erratum(&self) -> bool {
        self.form != self.printed
    }

    pub fn instances(&self) -> impl Iterator<Item = LinearForm> + '_ {
        self.rows
            .clone()
            .map(|j| self.form.shift_rows(j as i64 - 1).expect("downward shift"))
    }

    fn printed_instances(&self) -> impl Iterator<Item = LinearForm> + '_ {
        self.rows.clone().map(|j| {
            self.printed
                .shift_rows(j as i64 - 1)
                .expect("downward shift")
        })
    }
}

/// A list of table entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub entries: Vec<TableEntry>,
}

impl Family {
    /// Every instantiated form, with misprints corrected.
    pub fn forms(&self) -> FormSet {
        self.entries.iter().flat_map(|e| e.instances()).collect()
    }

    /// Every instantiated form exactly as printed.
    pub fn printed_forms(&self) -> FormSet {
        self.entries
            .iter()
            .flat_map(|e| e.printed_instances())
            .collect()
    }

    /// The forms at offset `j = 1`.
    pub fn base_forms(&self) -> FormSet {
        self.entries.iter().map(|e| e.form.clone()).collect()
    }

    pub fn errata(&self) -> impl Iterator<Item = &TableEntry> {
        self.entries.iter().filter(|e| e.is_erratum())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

struct DataFile {
    name: &'static str,
    label: TypeLabel,
    text: &'static str,
}

const DATA: &[DataFile] = &[
    DataFile {
        name: "f4_binf",
        label: TypeLabel::F4,
        text: include_str!("data/f4_binf.txt"),
    },
    DataFile {
        name: "e6_binf",
        label: TypeLabel::E6,
        text: include_str!("data/e6_binf.txt"),
    },
    DataFile {
        name: "e7_binf",
        label: TypeLabel::E7,
        text: include_str!("data/e7_binf.txt"),
    },
    DataFile {
        name: "e8_binf",
        label: TypeLabel::E8,
        text: include_str!("data/e8_binf.txt"),
    },
    DataFile {
        name: "f4_xi1",
        label: TypeLabel::F4,
        text: include_str!("data/f4_xi1.txt"),
    },
    DataFile {
        name: "f4_xi2",
        label: TypeLabel::F4,
        text: include_str!("data/f4_xi2.txt"),
    },
    DataFile {
        name: "f4_xi3",
        label: TypeLabel::F4,
        text: include_str!("data/f4_xi3.txt"),
    },
    DataFile {
        name: "f4_xi4",
        label: TypeLabel::F4,
        text: include_str!("data/f4_xi4.txt"),
    },
    DataFile {
        name: "e6_xi1",
        label: TypeLabel::E6,
        text: include_str!("data/e6_xi1.txt"),
    },
    DataFile {
        name: "e6_xi2",
        label: TypeLabel::E6,
        text: include_str!("data/e6_xi2.txt"),
    },
    DataFile {
        name: "e6_xi3",
        label: TypeLabel::E6,
        text: include_str!("data/e6_xi3.txt"),
    },
    DataFile {
        name: "e6_xi4",
        label: TypeLabel::E6,
        text: include_str!("data/e6_xi4.txt"),
    },
    DataFile {
        name: "e6_xi5",
        label: TypeLabel::E6,
        text: include_str!("data/e6_xi5.txt"),
    },
    DataFile {
        name: "e6_xi6",
        label: TypeLabel::E6,
        text: include_str!("data/e6_xi6.txt"),
    },
];

/// Parses one of the bundled tables by name, e.g. `"e8_binf"` or `"f4_xi3"`.
pub fn literal_table(name: &str) -> Result<Family> {
    let file = DATA
        .iter()
        .find(|d| d.name == name)
        .ok_or_else(|| Error::Invalid(format!("no bundled table named `{name}`")))?;
    let rank = file
        .label
        .fixed_rank()
        .expect("literal tables are exceptional");
    Ok(Family {
        entries: parse::parse_table(file.name, file.text, rank)?,
    })
}

pub fn literal_table_names() -> impl Iterator<Item = &'static str> {
    DATA.iter().map(|d| d.name)
}

/// Builds a form from `(row, col, coeff)` triples; columns `0` and `n + 1`
/// stand for identically zero coordinates.
fn lin(n: usize, terms: &[(usize, usize, i64)]) -> LinearForm {
    LinearForm::from_terms(
        n,
        terms
            .iter()
            .filter(|&&(_, col, _)| col >= 1 && col <= n)
            .map(|&(row, col, c)| (Pos::new(row, col), c)),
    )
}

fn check_classical(label: TypeLabel, n: usize) -> Result<()> {
    let ok = match label {
        TypeLabel::B | TypeLabel::C => n >= 2,
        TypeLabel::D => n >= 4,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidType { label, rank: n })
    }
}

/// Closed form of `S`-images of the coordinate `x_{j;1}` for `B_n`, `C_n`,
/// `D_n`, indexed by `k` (`0 ≤ k ≤ 2n − 1`, or `2n − 2` for `D_n`).
/// `primed` selects the second branch at `k = n − 1` for `D_n`.
pub fn phi_form(
    label: TypeLabel,
    n: usize,
    j: usize,
    k: usize,
    primed: bool,
) -> Result<LinearForm> {
    check_classical(label, n)?;
    if primed && label != TypeLabel::D {
        return Err(Error::Invalid(
            "primed families exist only for type D".into(),
        ));
    }
    let max = if label == TypeLabel::D {
        2 * n - 2
    } else {
        2 * n - 1
    };
    if k > max {
        return Err(Error::IndexOutOfRange { k, max });
    }
    let f = match label {
        TypeLabel::B | TypeLabel::C => {
            if label == TypeLabel::C && k == n - 1 {
                lin(n, &[(j, n, 2), (j + 1, n - 1, -1)])
            } else if label == TypeLabel::C && k == n {
                lin(n, &[(j + 1, n - 1, 1), (j + 1, n, -2)])
            } else if k < n {
                lin(n, &[(j, k + 1, 1), (j + 1, k, -1)])
            } else {
                let r = j + k - n + 1;
                lin(n, &[(r, 2 * n - k - 1, 1), (r, 2 * n - k, -1)])
            }
        }
        _ => {
            if k + 3 <= n {
                lin(n, &[(j, k + 1, 1), (j + 1, k, -1)])
            } else if k == n - 2 {
                lin(n, &[(j, n - 1, 1), (j, n, 1), (j + 1, n - 2, -1)])
            } else if k == n - 1 && primed {
                lin(n, &[(j, n - 1, 1), (j + 1, n, -1)])
            } else if k == n - 1 {
                lin(n, &[(j, n, 1), (j + 1, n - 1, -1)])
            } else if k == n {
                lin(n, &[(j + 1, n - 2, 1), (j + 1, n - 1, -1), (j + 1, n, -1)])
            } else {
                let r = j + k - n + 1;
                lin(n, &[(r, 2 * n - k - 2, 1), (r, 2 * n - k - 1, -1)])
            }
        }
    };
    Ok(f)
}

/// Last row that can carry a nonzero coordinate in `B(∞)`, which is also the
/// range of row offsets over which the tables are instantiated.
pub fn row_cutoff(label: TypeLabel, n: usize) -> Result<usize> {
    match label {
        TypeLabel::B | TypeLabel::C => Ok(n),
        TypeLabel::D => Ok(n - 1),
        TypeLabel::F4 => Ok(6),
        TypeLabel::E6 => Ok(8),
        TypeLabel::E7 => Ok(9),
        TypeLabel::E8 => Ok(15),
        _ => Err(Error::UnsupportedTable {
            label,
            what: "B(∞)".into(),
        }),
    }
}

/// The part of the `B(∞)` table reached by closure from the coordinates
/// `x_{j;1}`.
pub fn binf_closure_family(label: TypeLabel, n: usize) -> Result<Family> {
    let literal = match label {
        TypeLabel::F4 => Some("f4_binf"),
        TypeLabel::E6 => Some("e6_binf"),
        TypeLabel::E7 => Some("e7_binf"),
        TypeLabel::E8 => Some("e8_binf"),
        _ => None,
    };
    if let Some(name) = literal {
        if label.fixed_rank() != Some(n) {
            return Err(Error::InvalidType { label, rank: n });
        }
        return literal_table(name);
    }
    if !matches!(label, TypeLabel::B | TypeLabel::C | TypeLabel::D) {
        return Err(Error::UnsupportedTable {
            label,
            what: "B(∞)".into(),
        });
    }
    check_classical(label, n)?;
    let rows = 1..=row_cutoff(label, n)?;
    let max = if label == TypeLabel::D {
        2 * n - 2
    } else {
        2 * n - 1
    };
    let mut entries: Vec<TableEntry> = (0..=max)
        .map(|k| {
            Ok(TableEntry::exact(
                phi_form(label, n, 1, k, false)?,
                rows.clone(),
            ))
        })
        .collect::<Result<_>>()?;
    if label == TypeLabel::D {
        entries.push(TableEntry::exact(phi_form(label, n, 1, n - 1, true)?, rows));
    }
    Ok(Family { entries })
}

/// Forms of the `B(∞)` table that are not reached from `x_{j;1}`: the bare
/// coordinates of the two spin columns for `D_n`, empty otherwise.
pub fn binf_supplement(label: TypeLabel, n: usize) -> Result<Family> {
    if label != TypeLabel::D {
        return Ok(Family {
            entries: Vec::new(),
        });
    }
    check_classical(label, n)?;
    let rows = 1..=row_cutoff(label, n)?;
    Ok(Family {
        entries: [n - 1, n]
            .into_iter()
            .map(|c| TableEntry::exact(lin(n, &[(1, c, 1)]), rows.clone()))
            .collect(),
    })
}

/// The full `B(∞)` family.
pub fn binf_family(label: TypeLabel, n: usize) -> Result<Family> {
    let mut fam = binf_closure_family(label, n)?;
    fam.entries.extend(binf_supplement(label, n)?.entries);
    Ok(fam)
}

/// The defining forms of the `B(∞)` polyhedron, instantiated over all row
/// offsets.
pub fn binf_table(label: TypeLabel, n: usize) -> Result<FormSet> {
    Ok(binf_family(label, n)?.forms())
}

/// A strictly decreasing sequence of positive integers; trailing zeros are
/// implied.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdmissiblePattern(Vec<usize>);

impl AdmissiblePattern {
    /// Validates `mu` against the bound on its first entry (`n` for `B_n`,
    /// `n − 1` for `D_n`). Trailing zeros are stripped.
    pub fn new(mut mu: Vec<usize>, first_max: usize) -> Result<Self> {
        while mu.last() == Some(&0) {
            mu.pop();
        }
        let ok = !mu.is_empty()
            && mu[0] <= first_max
            && mu.windows(2).all(|w| w[1] < w[0])
            && mu.iter().all(|&m| m >= 1);
        if ok {
            Ok(AdmissiblePattern(mu))
        } else {
            Err(Error::InvalidPattern(mu))
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// `μ_k`, 1-based, zero past the end.
    pub fn at(&self, k: usize) -> usize {
        self.0.get(k - 1).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn first_max(label: TypeLabel, n: usize) -> Result<usize> {
    match label {
        TypeLabel::B if n >= 2 => Ok(n),
        TypeLabel::D if n >= 4 => Ok(n - 1),
        _ => Err(Error::Invalid(format!(
            "admissible patterns are defined for B and D, not {}",
            label.name(n)
        ))),
    }
}

/// All admissible patterns for `B_n` or `D_n`, shortest first.
pub fn admissible_patterns(label: TypeLabel, n: usize) -> Result<Vec<AdmissiblePattern>> {
    let max = first_max(label, n)?;
    // Each pattern is a nonempty subset of {1, …, max} listed decreasingly.
    let mut out: Vec<AdmissiblePattern> = (1u32..(1 << max))
        .map(|mask| {
            let mu: Vec<usize> = (1..=max)
                .rev()
                .filter(|&m| mask & (1 << (m - 1)) != 0)
                .collect();
            AdmissiblePattern(mu)
        })
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// `X_{j;i}` for `B_n`: `2x_{j;i}` off the last column, `x_{j;n}` on it.
fn b_symbol(n: usize, j: usize, i: usize, c: i64, out: &mut Vec<(usize, usize, i64)>) {
    if i == n {
        out.push((j, i, c));
    } else {
        out.push((j, i, 2 * c));
    }
}

/// Closed form of the node-`n` family member of `B_n` indexed by `mu`.
pub fn spin_form(n: usize, mu: &AdmissiblePattern) -> Result<LinearForm> {
    let mu = AdmissiblePattern::new(mu.parts().to_vec(), first_max(TypeLabel::B, n)?)?;
    let big_l = mu.len();
    let l = if mu.at(big_l) == 1 { big_l } else { big_l + 1 };
    let mut terms = Vec::new();
    for k in 1..=l {
        let m = mu.at(k);
        let row = m + k - 1;
        b_symbol(n, row, n - m, 1, &mut terms);
        b_symbol(n, row, n - m + 1, -1, &mut terms);
    }
    Ok(lin(n, &terms))
}

/// Closed form of the node-`(n − 1)` (`primed = false`) or node-`n`
/// (`primed = true`) family member of `D_n` indexed by `mu`.
pub fn d_spin_form(n: usize, mu: &AdmissiblePattern, primed: bool) -> Result<LinearForm> {
    let mu = AdmissiblePattern::new(mu.parts().to_vec(), first_max(TypeLabel::D, n)?)?;
    // The two spin columns trade places on rows of one parity.
    let swap_parity = if primed { 1 } else { 0 };
    let symbol = |j: usize, i: usize| -> usize {
        if j % 2 == swap_parity && i == n - 1 {
            n
        } else if j % 2 == swap_parity && i == n {
            n - 1
        } else {
            i
        }
    };
    let l = mu.len();
    let mut terms = Vec::new();
    for k in 1..=l {
        let m = mu.at(k);
        let row = m + k - 1;
        terms.push((row, symbol(row, n - m - 1), 1));
        terms.push((row, symbol(row, n - m), -1));
    }
    if mu.at(l) >= 2 {
        terms.push((l, symbol(l, n), 1));
    }
    Ok(lin(n, &terms))
}

/// Converts a `B_n` form into the corresponding `C_n` form.
///
/// Forms without support in column `n` are unchanged. Otherwise the column-`n`
/// coefficients are kept and all other coefficients are halved, which is the
/// `B_n` form with `x_{j;n} ↦ 2x_{j;n}` divided by 2. The constant is kept.
pub fn c_substitution(form: &LinearForm, n: usize) -> Result<LinearForm> {
    if form.rank() != n {
        return Err(Error::Invalid(format!(
            "form has rank {}, expected {n}",
            form.rank()
        )));
    }
    if !form.coeffs().iter().any(|(p, _)| p.col == n) {
        return Ok(form.clone());
    }
    let mut terms = Vec::with_capacity(form.coeffs().len());
    for &(p, c) in form.coeffs() {
        if p.col == n {
            terms.push((p, c));
        } else if c % 2 == 0 {
            terms.push((p, c / 2));
        } else {
            return Err(Error::Invalid(format!(
                "{form} has an odd coefficient off column {n}"
            )));
        }
    }
    Ok(
        LinearForm::from_terms(n, terms)
            .with_constant(form.lambda_part().to_vec(), form.absolute()),
    )
}

/// `{x_{j;i−j} − x_{j;i−j+1} : 1 ≤ j ≤ i}`, the family of a node on the
/// unbranched part of a classical diagram.
fn chain_family(n: usize, i: usize) -> FormSet {
    (1..=i)
        .map(|j| lin(n, &[(j, i - j, 1), (j, i - j + 1, -1)]))
        .collect()
}

/// The `S`-closure of each first-occurrence form `ξ^(i)`, from closed forms
/// or bundled tables. Index `i − 1` holds node `i`.
pub fn xi_first_tables(label: TypeLabel, n: usize) -> Result<Vec<FormSet>> {
    let unsupported = || Error::UnsupportedTable {
        label,
        what: "per-node B(λ) families".into(),
    };
    match label {
        TypeLabel::B | TypeLabel::C => {
            check_classical(label, n)?;
            let mut out: Vec<FormSet> = (1..n).map(|i| chain_family(n, i)).collect();
            let spin: FormSet = admissible_patterns(TypeLabel::B, n)?
                .iter()
                .map(|mu| spin_form(n, mu))
                .collect::<Result<_>>()?;
            let last = if label == TypeLabel::C {
                spin.iter()
                    .map(|f| c_substitution(f, n))
                    .collect::<Result<_>>()?
            } else {
                spin
            };
            out.push(last);
            Ok(out)
        }
        TypeLabel::D => {
            check_classical(label, n)?;
            let mut out: Vec<FormSet> = (1..n - 1).map(|i| chain_family(n, i)).collect();
            let pats = admissible_patterns(TypeLabel::D, n)?;
            for primed in [false, true] {
                out.push(
                    pats.iter()
                        .map(|mu| d_spin_form(n, mu, primed))
                        .collect::<Result<_>>()?,
                );
            }
            Ok(out)
        }
        TypeLabel::F4 | TypeLabel::E6 => {
            if label.fixed_rank() != Some(n) {
                return Err(Error::InvalidType { label, rank: n });
            }
            let prefix = if label == TypeLabel::F4 { "f4" } else { "e6" };
            (1..=n)
                .map(|i| Ok(literal_table(&format!("{prefix}_xi{i}"))?.forms()))
                .collect()
        }
        _ => Err(unsupported()),
    }
}

/// The `S`-word for `B_n` pattern `mu` as positions in application order,
/// starting from `X = 2x_{1;n−1} − x_{1;n}`.
///
/// The first part contributes `(t; n − t)` for `1 ≤ t < μ_1`; part `k ≥ 2`
/// contributes `(k − 1 + t; n − t)` for `0 ≤ t < μ_k`.
pub fn b_spin_word(n: usize, mu: &AdmissiblePattern) -> Vec<Pos> {
    let mut word: Vec<Pos> = (1..mu.at(1)).map(|t| Pos::new(t, n - t)).collect();
    for k in 2..=mu.len() {
        word.extend((0..mu.at(k)).map(|t| Pos::new(k - 1 + t, n - t)));
    }
    word
}

/// The `B_n` word with the first part running to `t = μ_1`, i.e. one more
/// operator than [`b_spin_word`]. Positions in column 0 act as the identity
/// and are omitted. Kept to document that the longer word overshoots.
pub fn b_spin_word_long(n: usize, mu: &AdmissiblePattern) -> Vec<Pos> {
    let mut word: Vec<Pos> = if mu.at(1) >= 2 {
        (1..=mu.at(1))
            .filter(|&t| t < n)
            .map(|t| Pos::new(t, n - t))
            .collect()
    } else {
        Vec::new()
    };
    for k in 2..=mu.len() {
        word.extend((0..mu.at(k)).map(|t| Pos::new(k - 1 + t, n - t)));
    }
    word
}

/// The `S`-word for `D_n` pattern `mu`, starting from
/// `X = x_{1;n−2} − x_{1;n−1}` (or `X′ = x_{1;n−2} − x_{1;n}` when `primed`).
///
/// The first part contributes `(t; n − 1 − t)` for `1 ≤ t < μ_1`. Part
/// `k ≥ 2` starts at `(k − 1; c)` with `c` the spin column chosen by the
/// parity of `k`, then continues with `(k − 1 + t; n − 1 − t)` for
/// `1 ≤ t < μ_k`.
pub fn d_spin_word(n: usize, mu: &AdmissiblePattern, primed: bool) -> Vec<Pos> {
    let mut word: Vec<Pos> = (1..mu.at(1)).map(|t| Pos::new(t, n - 1 - t)).collect();
    for k in 2..=mu.len() {
        let to_last = (k % 2 == 0) != primed;
        word.push(Pos::new(k - 1, if to_last { n } else { n - 1 }));
        word.extend((1..mu.at(k)).map(|t| Pos::new(k - 1 + t, n - 1 - t)));
    }
    word
}
