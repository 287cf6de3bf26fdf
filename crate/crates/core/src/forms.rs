//! Affine linear forms on finitely supported sequences, the piecewise-linear
//! operators `S_k` and `Ŝ_k`, and closure under them.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::rootdata::Weight;
use crate::zcrystal::{Iota, Pos, ZVector};

/// `c + Σ φ_k x_k` where the constant `c = Σ_m c_m λ_m + abs` is kept
/// symbolic in `λ`.
///
/// Coefficients are kept sorted by position with zeros removed, so derived
/// equality and ordering are structural. The derived order compares the
/// coefficient lists first, then the constants.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm {
    coeffs: Vec<(Pos, i64)>,
    lambda: Vec<i64>,
    abs: i64,
}

impl LinearForm {
    pub fn zero(rank: usize) -> Self {
        LinearForm {
            coeffs: Vec::new(),
            lambda: vec![0; rank],
            abs: 0,
        }
    }

    /// Sums repeated positions and drops zero coefficients.
    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Pos, i64)>) -> Self {
        let mut acc: BTreeMap<Pos, i64> = BTreeMap::new();
        for (p, c) in terms {
            assert!(
                p.row >= 1 && (1..=rank).contains(&p.col),
                "position {p} outside rank {rank}"
            );
            *acc.entry(p).or_insert(0) += c;
        }
        LinearForm {
            coeffs: acc.into_iter().filter(|&(_, c)| c != 0).collect(),
            lambda: vec![0; rank],
            abs: 0,
        }
    }

    /// The coordinate function `x_p`.
    pub fn coordinate(rank: usize, p: Pos) -> Self {
        LinearForm::from_terms(rank, [(p, 1)])
    }

    pub fn with_constant(mut self, lambda: Vec<i64>, abs: i64) -> Self {
        assert_eq!(lambda.len(), self.lambda.len());
        self.lambda = lambda;
        self.abs = abs;
        self
    }

    pub fn rank(&self) -> usize {
        self.lambda.len()
    }

    pub fn coeffs(&self) -> &[(Pos, i64)] {
        &self.coeffs
    }

    pub fn lambda_part(&self) -> &[i64] {
        &self.lambda
    }

    pub fn absolute(&self) -> i64 {
        self.abs
    }

    pub fn coeff(&self, p: Pos) -> i64 {
        match self.coeffs.binary_search_by(|(q, _)| q.cmp(&p)) {
            Ok(idx) => self.coeffs[idx].1,
            Err(_) => 0,
        }
    }

    pub fn coeff_flat(&self, k: usize) -> i64 {
        self.coeff(Pos::from_flat(k, self.rank()))
    }

    pub fn has_constant(&self) -> bool {
        self.abs != 0 || self.lambda.iter().any(|&c| c != 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && !self.has_constant()
    }

    /// Smallest and largest rows in the support.
    pub fn row_span(&self) -> Option<(usize, usize)> {
        let min = self.coeffs.iter().map(|(p, _)| p.row).min()?;
        let max = self.coeffs.iter().map(|(p, _)| p.row).max()?;
        Some((min, max))
    }

    pub fn max_flat(&self) -> usize {
        self.coeffs.last().map_or(0, |(p, _)| p.flat(self.rank()))
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, c: i64, other: &LinearForm) -> LinearForm {
        debug_assert_eq!(self.rank(), other.rank());
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + other.coeffs.len());
        let (mut a, mut b) = (
            self.coeffs.iter().peekable(),
            other.coeffs.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(p, x)), Some(&&(q, y))) => {
                    if p < q {
                        coeffs.push((p, x));
                        a.next();
                    } else if q < p {
                        coeffs.push((q, c * y));
                        b.next();
                    } else {
                        if x + c * y != 0 {
                            coeffs.push((p, x + c * y));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some(&&(p, x)), None) => {
                    coeffs.push((p, x));
                    a.next();
                }
                (None, Some(&&(q, y))) => {
                    coeffs.push((q, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        coeffs.retain(|&(_, v)| v != 0);
        LinearForm {
            coeffs,
            lambda: self
                .lambda
                .iter()
                .zip(&other.lambda)
                .map(|(x, y)| x + c * y)
                .collect(),
            abs: self.abs + c * other.abs,
        }
    }

    pub fn scaled(&self, c: i64) -> LinearForm {
        LinearForm::zero(self.rank()).add_scaled(c, self)
    }

    /// Moves the support down by `delta` rows (up when negative). Returns
    /// `None` if a coefficient would leave row 1.
    pub fn shift_rows(&self, delta: i64) -> Option<LinearForm> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for &(p, c) in &self.coeffs {
            let row = p.row as i64 + delta;
            if row < 1 {
                return None;
            }
            coeffs.push((Pos::new(row as usize, p.col), c));
        }
        Some(LinearForm {
            coeffs,
            lambda: self.lambda.clone(),
            abs: self.abs,
        })
    }

    /// The constant term at a concrete `λ`; `None` means `λ = 0`.
    pub fn constant_at(&self, lambda: Option<&Weight>) -> i64 {
        let l = match lambda {
            Some(w) => w.0.iter().zip(&self.lambda).map(|(a, b)| a * b).sum(),
            None => 0,
        };
        l + self.abs
    }

    pub fn eval(&self, x: &ZVector, lambda: Option<&Weight>) -> i64 {
        self.constant_at(lambda) + self.coeffs.iter().map(|&(p, c)| c * x.get(p)).sum::<i64>()
    }

    /// Parses forms such as `2x_{j;4}+x_{j+1;2}-2x_{j+1;3}` or
    /// `λ_2 + 2x_{1;1} - x_{1;2}`. A row written with `j` is evaluated at the
    /// given offset; `λ_m` may also be written `l_m`.
    pub fn parse(input: &str, rank: usize, j: Option<usize>) -> Result<LinearForm> {
        parse_form(input, rank, j)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(i64, String)> = Vec::new();
        for (m, &c) in self.lambda.iter().enumerate() {
            if c != 0 {
                terms.push((c, format!("λ_{}", m + 1)));
            }
        }
        if self.abs != 0 {
            terms.push((self.abs, String::new()));
        }
        for &(p, c) in &self.coeffs {
            terms.push((c, format!("x_{{{};{}}}", p.row, p.col)));
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (c, sym)) in terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else { "+" };
            if idx == 0 {
                if *c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let m = c.abs();
            if sym.is_empty() {
                write!(f, "{m}")?;
            } else if m == 1 {
                f.write_str(sym)?;
            } else {
                write!(f, "{m}{sym}")?;
            }
        }
        Ok(())
    }
}

fn parse_form(input: &str, rank: usize, j: Option<usize>) -> Result<LinearForm> {
    let err = |reason: &str| Error::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let s: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err("empty input"));
    }
    let mut terms = Vec::new();
    let mut lambda = vec![0i64; rank];
    let mut abs = 0i64;
    let mut idx = 0;

    let read_int = |idx: &mut usize| -> Option<i64> {
        let start = *idx;
        while *idx < s.len() && s[*idx].is_ascii_digit() {
            *idx += 1;
        }
        if *idx == start {
            None
        } else {
            s[start..*idx].iter().collect::<String>().parse().ok()
        }
    };

    while idx < s.len() {
        let mut sign = 1;
        if s[idx] == '+' || s[idx] == '-' {
            if s[idx] == '-' {
                sign = -1;
            }
            idx += 1;
        } else if idx > 0 {
            return Err(err("expected `+` or `-` between terms"));
        }
        let mult = read_int(&mut idx);
        if idx >= s.len() || (s[idx] != 'x' && s[idx] != 'λ' && s[idx] != 'l') {
            match mult {
                Some(m) => {
                    abs += sign * m;
                    continue;
                }
                None => return Err(err("expected a term")),
            }
        }
        let c = sign * mult.unwrap_or(1);
        if s[idx] == 'λ' || s[idx] == 'l' {
            idx += 1;
            if idx >= s.len() || s[idx] != '_' {
                return Err(err("expected `_` after λ"));
            }
            idx += 1;
            let m = read_int(&mut idx).ok_or_else(|| err("expected a node after λ_"))? as usize;
            if m == 0 || m > rank {
                return Err(err("λ index out of range"));
            }
            lambda[m - 1] += c;
            continue;
        }
        // x_{row;col}
        idx += 1;
        if s.get(idx) != Some(&'_') || s.get(idx + 1) != Some(&'{') {
            return Err(err("expected `_{` after x"));
        }
        idx += 2;
        let close = s[idx..]
            .iter()
            .position(|&ch| ch == '}')
            .ok_or_else(|| err("unclosed brace"))?;
        let inner: String = s[idx..idx + close].iter().collect();
        idx += close + 1;
        let (row_s, col_s) = inner
            .split_once(';')
            .ok_or_else(|| err("expected `row;col`"))?;
        let row = if let Some(rest) = row_s.strip_prefix('j') {
            let base = j.ok_or_else(|| err("row offset j used without a value"))? as i64;
            let off: i64 = if rest.is_empty() {
                0
            } else {
                rest.parse().map_err(|_| err("bad row offset"))?
            };
            base + off
        } else {
            row_s.parse().map_err(|_| err("bad row"))?
        };
        let col: usize = col_s.parse().map_err(|_| err("bad column"))?;
        if col > rank + 1 || row < 1 {
            return Err(err("position out of range"));
        }
        // Columns 0 and n + 1 are identically zero.
        if col >= 1 && col <= rank {
            terms.push((Pos::new(row as usize, col), c));
        }
    }
    Ok(LinearForm::from_terms(rank, terms).with_constant(lambda, abs))
}

/// Returns `None` for the identically zero form; otherwise the form itself,
/// which is already stored canonically. No rescaling is ever applied.
pub fn canonicalize(form: LinearForm) -> Option<LinearForm> {
    if form.is_zero() {
        None
    } else {
        Some(form)
    }
}

/// A deduplicated set of nonzero forms in canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FormSet(BTreeSet<LinearForm>);

impl FormSet {
    pub fn new() -> Self {
        FormSet(BTreeSet::new())
    }

    /// Inserts a form, dropping it if zero. Returns whether it was new.
    pub fn insert(&mut self, form: LinearForm) -> bool {
        match canonicalize(form) {
            Some(f) => self.0.insert(f),
            None => false,
        }
    }

    pub fn contains(&self, form: &LinearForm) -> bool {
        self.0.contains(form)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &LinearForm> {
        self.0.iter()
    }

    pub fn extend(&mut self, other: impl IntoIterator<Item = LinearForm>) {
        for f in other {
            self.insert(f);
        }
    }

    pub fn union(&self, other: &FormSet) -> FormSet {
        FormSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn difference(&self, other: &FormSet) -> FormSet {
        FormSet(self.0.difference(&other.0).cloned().collect())
    }

    pub fn map(&self, f: impl FnMut(&LinearForm) -> LinearForm) -> FormSet {
        self.iter().map(f).collect()
    }

    pub fn into_vec(self) -> Vec<LinearForm> {
        self.0.into_iter().collect()
    }
}

impl FromIterator<LinearForm> for FormSet {
    fn from_iter<T: IntoIterator<Item = LinearForm>>(iter: T) -> Self {
        let mut s = FormSet::new();
        s.extend(iter);
        s
    }
}

impl IntoIterator for FormSet {
    type Item = LinearForm;
    type IntoIter = std::collections::btree_set::IntoIter<LinearForm>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a FormSet {
    type Item = &'a LinearForm;
    type IntoIter = std::collections::btree_set::Iter<'a, LinearForm>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for FormSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for form in &self.0 {
            writeln!(f, "{form}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// `β_k = σ_k − σ_{k⁺} = x_k + Σ_{k<j<k⁺} ⟨h_{i_k}, α_{i_j}⟩ x_j + x_{k⁺}`.
pub fn beta(iota: &Iota, k: usize) -> LinearForm {
    let n = iota.rank();
    let c = iota.cartan();
    let ik = iota.node(k);
    let terms = std::iter::once((k, 1))
        .chain((k + 1..k + n).map(|j| (j, c.a(ik, iota.node(j)))))
        .chain(std::iter::once((k + n, 1)))
        .map(|(j, a)| (iota.pos(j), a));
    LinearForm::from_terms(n, terms)
}

/// `β_k⁻`: equals `β_{k⁻}` when `k⁻ > 0`, and otherwise
/// `−λ_{i_k} + Σ_{1≤j<k} ⟨h_{i_k}, α_{i_j}⟩ x_j + x_k`.
pub fn beta_minus(iota: &Iota, k: usize) -> LinearForm {
    let n = iota.rank();
    if k > n {
        return beta(iota, k - n);
    }
    let c = iota.cartan();
    let ik = iota.node(k);
    let terms = (1..k)
        .map(|j| (j, c.a(ik, iota.node(j))))
        .chain(std::iter::once((k, 1)));
    let mut lambda = vec![0; n];
    lambda[ik - 1] = -1;
    LinearForm::from_terms(n, terms.map(|(j, a)| (iota.pos(j), a))).with_constant(lambda, 0)
}

pub fn beta_pm(iota: &Iota, k: usize, sign: Sign) -> LinearForm {
    match sign {
        Sign::Plus => beta(iota, k),
        Sign::Minus => beta_minus(iota, k),
    }
}

/// The result of `S_k`; `violation` is set when `φ_k < 0` at a first
/// occurrence, where `S_k` is undefined and the form is returned unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Applied {
    pub form: LinearForm,
    pub violation: bool,
}

pub fn apply_s(iota: &Iota, k: usize, form: &LinearForm) -> Applied {
    let c = form.coeff_flat(k);
    if c > 0 {
        Applied {
            form: form.add_scaled(-c, &beta(iota, k)),
            violation: false,
        }
    } else if c < 0 && k > iota.rank() {
        Applied {
            form: form.add_scaled(-c, &beta(iota, k - iota.rank())),
            violation: false,
        }
    } else {
        Applied {
            form: form.clone(),
            violation: c < 0,
        }
    }
}

pub fn apply_shat(iota: &Iota, k: usize, form: &LinearForm) -> LinearForm {
    let c = form.coeff_flat(k);
    if c > 0 {
        form.add_scaled(-c, &beta(iota, k))
    } else if c < 0 {
        form.add_scaled(-c, &beta_minus(iota, k))
    } else {
        form.clone()
    }
}

/// Applies `S` at each position of `word` in order. Violations leave the form
/// unchanged, as in [`apply_s`].
pub fn apply_s_word(iota: &Iota, form: &LinearForm, word: &[Pos]) -> LinearForm {
    word.iter().fold(form.clone(), |acc, &p| {
        apply_s(iota, p.flat(iota.rank()), &acc).form
    })
}

/// `ξ^(i) = −Σ_{1≤j<i} ⟨h_i, α_j⟩ x_{1;j} − x_{1;i}`, the first-occurrence
/// form of node `i` without its constant.
pub fn xi_form(iota: &Iota, i: usize) -> LinearForm {
    let mut f = beta_minus(iota, i).scaled(-1);
    f.lambda = vec![0; iota.rank()];
    f
}

/// `λ^(i) = λ_i + ξ^(i)`.
pub fn lambda_form(iota: &Iota, i: usize) -> LinearForm {
    beta_minus(iota, i).scaled(-1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operator {
    S,
    SHat,
}

/// An application of `S_k` at a first occurrence with negative coefficient.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub form: LinearForm,
    pub position: usize,
}

#[derive(Clone, Debug)]
pub struct Closure {
    pub forms: FormSet,
    pub violations: Vec<Violation>,
    /// Set when some form has support past the position bound, so operators
    /// there were not applied.
    pub truncated: bool,
    parents: BTreeMap<LinearForm, (LinearForm, usize)>,
}

impl Closure {
    /// The generator a form descends from and the positions applied to it,
    /// in application order.
    pub fn word(&self, form: &LinearForm) -> Option<(LinearForm, Vec<usize>)> {
        if !self.forms.contains(form) {
            return None;
        }
        let mut word = Vec::new();
        let mut cur = form.clone();
        while let Some((parent, k)) = self.parents.get(&cur) {
            word.push(*k);
            cur = parent.clone();
        }
        word.reverse();
        Some((cur, word))
    }
}

/// Least set containing `generators` and closed under the operator at every
/// position `k ≤ position_bound`. Zero forms are dropped.
pub fn closure(
    iota: &Iota,
    generators: &FormSet,
    op: Operator,
    position_bound: usize,
    cap: usize,
) -> Result<Closure> {
    let mut forms = FormSet::new();
    let mut parents = BTreeMap::new();
    let mut violations = BTreeSet::new();
    let mut truncated = false;
    let mut queue = VecDeque::new();
    for g in generators {
        if forms.insert(g.clone()) {
            queue.push_back(g.clone());
        }
    }
    if forms.len() > cap {
        return Err(Error::ClosureCap(cap));
    }
    let n = iota.rank();
    while let Some(phi) = queue.pop_front() {
        for &(p, _) in phi.coeffs() {
            let k = p.flat(n);
            if k > position_bound {
                truncated = true;
                continue;
            }
            let psi = match op {
                Operator::S => {
                    let applied = apply_s(iota, k, &phi);
                    if applied.violation {
                        violations.insert(Violation {
                            form: phi.clone(),
                            position: k,
                        });
                    }
                    applied.form
                }
                Operator::SHat => apply_shat(iota, k, &phi),
            };
            if psi == phi || psi.is_zero() || forms.contains(&psi) {
                continue;
            }
            if forms.len() >= cap {
                return Err(Error::ClosureCap(cap));
            }
            forms.insert(psi.clone());
            parents.insert(psi.clone(), (phi.clone(), k));
            queue.push_back(psi);
        }
    }
    Ok(Closure {
        forms,
        violations: violations.into_iter().collect(),
        truncated,
        parents,
    })
}

/// Forms with a negative coefficient in row 1.
pub fn positivity_witnesses<'a>(
    forms: impl IntoIterator<Item = &'a LinearForm>,
) -> Vec<LinearForm> {
    forms
        .into_iter()
        .filter(|f| f.coeffs().iter().any(|&(p, c)| p.row == 1 && c < 0))
        .cloned()
        .collect()
}

/// Nonnegativity of every first-occurrence coefficient.
pub fn check_positivity(forms: &FormSet) -> bool {
    positivity_witnesses(forms).is_empty()
}

/// Positivity of the B(∞) forms and the per-node families, exempting each
/// `ξ^(i)` itself.
pub fn check_strict_positivity(iota: &Iota, xi: &FormSet, xi_per_node: &[FormSet]) -> bool {
    strict_positivity_witnesses(iota, xi, xi_per_node).is_empty()
}

pub fn strict_positivity_witnesses(
    iota: &Iota,
    xi: &FormSet,
    xi_per_node: &[FormSet],
) -> Vec<LinearForm> {
    let exempt: BTreeSet<LinearForm> = (1..=iota.rank()).map(|i| xi_form(iota, i)).collect();
    let all = xi.iter().chain(xi_per_node.iter().flat_map(|s| s.iter()));
    positivity_witnesses(all.filter(|f| !exempt.contains(f)))
}

pub fn ample_witnesses(forms: &FormSet, lambda: &Weight) -> Vec<LinearForm> {
    forms
        .iter()
        .filter(|f| f.constant_at(Some(lambda)) < 0)
        .cloned()
        .collect()
}

/// Whether the origin satisfies every form at `λ`.
pub fn check_ample(forms: &FormSet, lambda: &Weight) -> bool {
    ample_witnesses(forms, lambda).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{cartan_matrix, TypeLabel};

    fn iota(label: TypeLabel, rank: usize) -> Iota {
        Iota::new(cartan_matrix(label, rank).unwrap())
    }

    fn f(s: &str, rank: usize) -> LinearForm {
        LinearForm::parse(s, rank, None).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let g = LinearForm::parse("2x_{j;4}+x_{j+1;2}-2x_{j+1;3}", 4, Some(3)).unwrap();
        assert_eq!(g.to_string(), "2x_{3;4} + x_{4;2} - 2x_{4;3}");
        let h = f("λ_2 + 2x_{1;1} - x_{1;2} - 3", 2);
        assert_eq!(h.to_string(), "λ_2 - 3 + 2x_{1;1} - x_{1;2}");
        assert_eq!(f(&h.to_string(), 2), h);
        assert_eq!(f("-x_{3;1}", 2).coeff(Pos::new(3, 1)), -1);
        assert_eq!(f("x_{2;0}-x_{2;1}", 2), f("-x_{2;1}", 2));
        assert!(LinearForm::parse("x_{j;1}", 2, None).is_err());
        assert!(LinearForm::parse("x_{1;1}x_{1;2}", 2, None).is_err());
        assert!(LinearForm::parse("", 2, None).is_err());
    }

    #[test]
    fn canonicalize_rules() {
        let form = LinearForm::from_terms(2, [(Pos::new(1, 1), 0), (Pos::new(1, 2), 1)]);
        assert_eq!(canonicalize(form).unwrap(), f("x_{1;2}", 2));
        assert_eq!(canonicalize(LinearForm::zero(2)), None);
        assert_eq!(
            canonicalize(f("2x_{1;1}-x_{1;2}", 2)).unwrap().to_string(),
            "2x_{1;1} - x_{1;2}"
        );
    }

    #[test]
    fn beta_examples() {
        let b2 = iota(TypeLabel::B, 2);
        assert_eq!(beta(&b2, 1), f("x_{1;1}-x_{1;2}+x_{2;1}", 2));
        assert_eq!(beta(&b2, 2), f("x_{1;2}-2x_{2;1}+x_{2;2}", 2));
        assert_eq!(beta(&b2, 7).eval(&ZVector::zero(2), None), 0);
        assert_eq!(beta_minus(&b2, 1), f("-λ_1+x_{1;1}", 2));
        assert_eq!(beta_minus(&b2, 2), f("-λ_2-2x_{1;1}+x_{1;2}", 2));
        assert_eq!(beta_minus(&b2, 4), beta(&b2, 2));
        assert_eq!(beta_pm(&b2, 3, Sign::Plus), beta(&b2, 3));
    }

    #[test]
    fn s_examples() {
        let b3 = iota(TypeLabel::B, 3);
        for j in 1..4 {
            let x = LinearForm::coordinate(3, Pos::new(j, 1));
            let k = Pos::new(j, 1).flat(3);
            let want = LinearForm::parse("x_{j;2}-x_{j+1;1}", 3, Some(j)).unwrap();
            assert_eq!(apply_s(&b3, k, &x).form, want);
        }
        let c3 = iota(TypeLabel::C, 3);
        let phi = LinearForm::parse("2x_{j;3}-x_{j+1;2}", 3, Some(2)).unwrap();
        let want = LinearForm::parse("x_{j+1;2}-2x_{j+1;3}", 3, Some(2)).unwrap();
        assert_eq!(apply_s(&c3, Pos::new(2, 3).flat(3), &phi).form, want);
        // Zero coefficient: unchanged.
        assert_eq!(apply_s(&c3, 1, &phi).form, phi);
    }

    #[test]
    fn s_violation_is_flagged() {
        let b2 = iota(TypeLabel::B, 2);
        let out = apply_s(&b2, 1, &f("-x_{1;1}", 2));
        assert!(out.violation);
        assert_eq!(out.form, f("-x_{1;1}", 2));
    }

    #[test]
    fn shat_examples() {
        let b2 = iota(TypeLabel::B, 2);
        let l1 = lambda_form(&b2, 1);
        assert_eq!(l1, f("λ_1-x_{1;1}", 2));
        assert!(apply_shat(&b2, 1, &l1).is_zero());
        let phi = f("x_{1;2}-x_{2;1}", 2);
        assert_eq!(apply_shat(&b2, 2, &phi), apply_s(&b2, 2, &phi).form);
        assert_eq!(apply_shat(&b2, 3, &phi), apply_s(&b2, 3, &phi).form);
    }

    #[test]
    fn xi_and_lambda_forms() {
        let b2 = iota(TypeLabel::B, 2);
        assert_eq!(lambda_form(&b2, 2), f("λ_2+2x_{1;1}-x_{1;2}", 2));
        assert_eq!(xi_form(&b2, 2), f("2x_{1;1}-x_{1;2}", 2));
        let f4 = iota(TypeLabel::F4, 4);
        assert_eq!(xi_form(&f4, 1), f("-x_{1;1}", 4));
    }

    #[test]
    fn b2_closure() {
        let b2 = iota(TypeLabel::B, 2);
        let gens: FormSet = [f("x_{1;1}", 2)].into_iter().collect();
        let c = closure(&b2, &gens, Operator::S, 8, 1000).unwrap();
        let want: FormSet = ["x_{1;1}", "x_{1;2}-x_{2;1}", "x_{2;1}-x_{2;2}", "-x_{3;1}"]
            .into_iter()
            .map(|s| f(s, 2))
            .collect();
        assert_eq!(c.forms, want);
        assert!(c.violations.is_empty());
        assert!(!c.truncated);
        let (gen, word) = c.word(&f("-x_{3;1}", 2)).unwrap();
        assert_eq!(gen, f("x_{1;1}", 2));
        assert_eq!(word, vec![1, 2, 3]);
    }

    #[test]
    fn closure_drops_zero_and_respects_cap() {
        let b2 = iota(TypeLabel::B, 2);
        let c = closure(&b2, &FormSet::new(), Operator::S, 8, 10).unwrap();
        assert!(c.forms.is_empty());
        let gens: FormSet = [f("x_{1;1}", 2)].into_iter().collect();
        assert!(matches!(
            closure(&b2, &gens, Operator::S, 8, 2),
            Err(Error::ClosureCap(2))
        ));
        let trunc = closure(&b2, &gens, Operator::S, 2, 100).unwrap();
        assert!(trunc.truncated);
    }

    #[test]
    fn positivity_checks() {
        let single = |s: &str| -> FormSet { [f(s, 2)].into_iter().collect() };
        assert!(check_positivity(&single("x_{1;1}")));
        assert!(!check_positivity(&single("-x_{1;1}")));
        let b2 = iota(TypeLabel::B, 2);
        assert!(check_strict_positivity(
            &b2,
            &single("x_{1;1}"),
            &[single("-x_{1;1}")]
        ));
        assert!(!check_strict_positivity(
            &b2,
            &single("x_{1;2}-x_{1;1}"),
            &[]
        ));
        let lam = Weight(vec![1, 0]);
        assert!(check_ample(&single("λ_1-x_{1;1}"), &lam));
        assert!(check_ample(&single("x_{1;1}"), &Weight::zero(2)));
        assert!(!check_ample(&single("-1+x_{1;1}"), &lam));
    }
}
