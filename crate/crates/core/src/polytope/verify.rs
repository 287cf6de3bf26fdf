//! The verification harness: tables against closure, inequality systems
//! against the crystal-operator oracle, positivity, the nonzero-coordinate
//! count and the crystal axioms.

use std::collections::BTreeSet;
use std::fmt;

use crate::forms::{check_positivity, positivity_witnesses, strict_positivity_witnesses, FormSet};
use crate::limits::Limits;
use crate::rootdata::{longest_word_length, weyl_dim, CartanDatum, Weight};
use crate::tables::{self, Family};
use crate::zcrystal::{Ambient, Iota, ZVector};

use super::{
    build, first_column_closure, lowest_weight_support, xi_closures, Object, Polyhedron, Source,
};

const MAX_WITNESSES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Not applicable, e.g. no table exists for the type.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    /// Counts and other context, one line.
    pub detail: String,
    /// At most ten offending items; never empty on failure.
    pub witnesses: Vec<String>,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: CheckStatus::Pass,
            detail: detail.into(),
            witnesses: Vec::new(),
        }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: CheckStatus::Skipped,
            detail: reason.into(),
            witnesses: Vec::new(),
        }
    }

    /// Passes iff `witnesses` is empty; keeps at most ten of them.
    pub fn from_witnesses(
        name: impl Into<String>,
        detail: impl Into<String>,
        witnesses: Vec<String>,
    ) -> Self {
        let status = if witnesses.is_empty() {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        CheckResult {
            name: name.into(),
            status,
            detail: detail.into(),
            witnesses: witnesses.into_iter().take(MAX_WITNESSES).collect(),
        }
    }

    /// A failure carrying the error, except that hitting a size cap only
    /// skips the check.
    pub fn from_error(
        name: impl Into<String>,
        context: &str,
        err: impl std::borrow::Borrow<crate::Error>,
    ) -> Self {
        let err = err.borrow();
        match err {
            crate::Error::ClosureCap(_) | crate::Error::EnumerationCap(_) => CheckResult::skipped(
                name,
                format!(
                    "{err}; raise {} or {} to run it",
                    crate::limits::CLOSURE_CAP_VAR,
                    crate::limits::ENUMERATION_CAP_VAR
                ),
            ),
            crate::Error::UnsupportedTable { .. } => CheckResult::skipped(name, err.to_string()),
            _ => CheckResult::from_witnesses(
                name,
                format!("{context} failed"),
                vec![err.to_string()],
            ),
        }
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "SKIP",
        };
        write!(f, "[{tag}] {}: {}", self.name, self.detail)?;
        for w in &self.witnesses {
            write!(f, "\n    {w}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        !self.checks.iter().any(CheckResult::failed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.failed())
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

fn set_diff_witnesses<T: Ord + fmt::Display>(
    left: &BTreeSet<T>,
    right: &BTreeSet<T>,
    l: &str,
    r: &str,
) -> Vec<String> {
    let mut w: Vec<String> = left
        .difference(right)
        .take(MAX_WITNESSES)
        .map(|x| format!("only in {l}: {x}"))
        .collect();
    w.extend(
        right
            .difference(left)
            .take(MAX_WITNESSES)
            .map(|x| format!("only in {r}: {x}")),
    );
    w
}

fn form_diff_witnesses(left: &FormSet, right: &FormSet, l: &str, r: &str) -> Vec<String> {
    let a: BTreeSet<_> = left.iter().cloned().collect();
    let b: BTreeSet<_> = right.iter().cloned().collect();
    set_diff_witnesses(&a, &b, l, r)
}

/// Compares a `B(∞)` family with the `S`-closure of `x_{j;1}` over the
/// family's rows.
pub fn check_table_against_closure(iota: &Iota, family: &Family, limits: &Limits) -> CheckResult {
    let name = "closure = table";
    let rows = family
        .entries
        .iter()
        .map(|e| *e.rows.end())
        .max()
        .unwrap_or(1);
    let c = match first_column_closure(iota, rows, limits) {
        Ok(c) => c,
        Err(e) => return CheckResult::from_error(name, "closure", e),
    };
    let table = family.forms();
    let printed = family.printed_forms();
    let detail = format!(
        "{} closure forms, {} table forms over rows 1..={rows}; {} entr{} corrected from print, printed set {}",
        c.forms.len(),
        table.len(),
        family.errata().count(),
        if family.errata().count() == 1 { "y" } else { "ies" },
        if printed == c.forms { "equal" } else { "differs" },
    );
    CheckResult::from_witnesses(
        name,
        detail,
        form_diff_witnesses(&c.forms, &table, "closure", "table"),
    )
}

fn check_per_node(iota: &Iota, limits: &Limits) -> CheckResult {
    let name = "per-node closure = table";
    let cartan = iota.cartan();
    let tables = match tables::xi_first_tables(cartan.type_label, cartan.rank) {
        Ok(t) => t,
        Err(e) => return CheckResult::skipped(name, e.to_string()),
    };
    let closures = match xi_closures(iota, limits) {
        Ok(c) => c,
        Err(e) => return CheckResult::from_error(name, "closure", e),
    };
    let mut w = Vec::new();
    for (i, (t, c)) in tables.iter().zip(&closures).enumerate() {
        w.extend(
            form_diff_witnesses(c, t, "closure", "table")
                .into_iter()
                .map(|s| format!("node {}: {s}", i + 1)),
        );
    }
    let sizes: Vec<String> = tables.iter().map(|t| t.len().to_string()).collect();
    CheckResult::from_witnesses(name, format!("family sizes [{}]", sizes.join(", ")), w)
}

/// Witnesses of crystal-axiom failures on a set of vectors.
///
/// Checks `ẽ_i f̃_i` and `f̃_i ẽ_i` round trips, the weight shift by `α_i`,
/// `φ_i = ε_i + ⟨h_i, wt⟩`, and that every element but 0 has some `ẽ_i`
/// inside the set, so 0 is the unique highest weight element and the set is
/// connected. With `complete`, the set must also be closed under `f̃_i` and
/// `ε_i`, `φ_i` must count the `ẽ_i`, `f̃_i` strings (seminormality).
pub fn check_crystal_axioms(
    iota: &Iota,
    set: &BTreeSet<ZVector>,
    ambient: &Ambient,
    complete: bool,
) -> Vec<String> {
    let n = iota.rank();
    let cartan = iota.cartan();
    let mut w = Vec::new();
    let zero = ZVector::zero(n);
    if !set.contains(&zero) {
        w.push("0 is missing".to_string());
    }
    for x in set {
        let wt = iota.weight(x, ambient);
        let mut has_parent = false;
        for i in 1..=n {
            let eps = iota.epsilon(x, ambient, i);
            let phi = iota.phi(x, ambient, i);
            if phi - eps != wt.at(i) {
                w.push(format!(
                    "{x}: φ_{i} − ε_{i} = {} but ⟨h_{i}, wt⟩ = {}",
                    phi - eps,
                    wt.at(i)
                ));
            }
            if let Some(y) = iota.f_tilde(x, ambient, i) {
                if iota.e_tilde(&y, ambient, i).as_ref() != Some(x) {
                    w.push(format!("{x}: ẽ_{i} f̃_{i} does not return"));
                }
                let wy = iota.weight(&y, ambient);
                if (1..=n).any(|j| wy.at(j) != wt.at(j) - cartan.a(j, i)) {
                    w.push(format!("{x}: f̃_{i} does not lower the weight by α_{i}"));
                }
                if complete && !set.contains(&y) {
                    w.push(format!("{x}: f̃_{i} leaves the set"));
                }
            }
            if let Some(y) = iota.e_tilde(x, ambient, i) {
                if iota.f_tilde(&y, ambient, i).as_ref() != Some(x) {
                    w.push(format!("{x}: f̃_{i} ẽ_{i} does not return"));
                }
                let wy = iota.weight(&y, ambient);
                if (1..=n).any(|j| wy.at(j) != wt.at(j) + cartan.a(j, i)) {
                    w.push(format!("{x}: ẽ_{i} does not raise the weight by α_{i}"));
                }
                has_parent |= set.contains(&y);
            }
            if complete {
                let (e_len, f_len) = (
                    string_length(iota, x, ambient, i, false),
                    string_length(iota, x, ambient, i, true),
                );
                if e_len != eps || f_len != phi {
                    w.push(format!(
                        "{x}: node {i} strings {e_len}, {f_len} but ε, φ = {eps}, {phi}"
                    ));
                }
            }
        }
        if *x != zero && !has_parent {
            w.push(format!("{x}: no ẽ_i lands in the set"));
        }
        if w.len() >= MAX_WITNESSES {
            break;
        }
    }
    w
}

fn string_length(iota: &Iota, x: &ZVector, ambient: &Ambient, i: usize, down: bool) -> i64 {
    let mut cur = x.clone();
    let mut len = 0;
    loop {
        let next = if down {
            iota.f_tilde(&cur, ambient, i)
        } else {
            iota.e_tilde(&cur, ambient, i)
        };
        match next {
            Some(y) if len < 10_000 => {
                cur = y;
                len += 1;
            }
            _ => return len,
        }
    }
}

fn negative_entries(points: &BTreeSet<ZVector>) -> Vec<String> {
    points
        .iter()
        .filter(|x| x.nonzero().any(|(_, c)| c < 0))
        .take(MAX_WITNESSES)
        .map(|x| x.to_string())
        .collect()
}

/// Runs every check for `cartan` on the requested sources.
///
/// `B(∞)` is compared with crystal generation up to coordinate sum `depth`;
/// when `lambda` is given, `B(λ)` is compared with generation and with the
/// Weyl dimension.
pub fn verify(
    cartan: &CartanDatum,
    lambda: Option<&Weight>,
    depth: usize,
    sources: &[Source],
    limits: &Limits,
) -> VerifyReport {
    let iota = Iota::new(cartan.clone());
    let mut checks = Vec::new();

    // Tables against closure.
    match tables::binf_closure_family(cartan.type_label, cartan.rank) {
        Ok(fam) => checks.push(check_table_against_closure(&iota, &fam, limits)),
        Err(e) => checks.push(CheckResult::skipped("closure = table", e.to_string())),
    }
    checks.push(check_per_node(&iota, limits));

    let roots = longest_word_length(cartan).ok();
    let lowest = lowest_weight_support(&iota);
    let generated = iota.generate_binf(depth);
    checks.push(CheckResult::from_witnesses(
        "crystal axioms on B(∞)",
        format!("{} elements up to depth {depth}", generated.len()),
        check_crystal_axioms(&iota, &generated, &Ambient::Plain, false),
    ));
    let generated_lambda = lambda.map(|l| iota.generate_blambda(l, limits.enumeration_cap));
    if let (Some(l), Some(gl)) = (lambda, &generated_lambda) {
        checks.push(match gl {
            Ok(set) => CheckResult::from_witnesses(
                "crystal axioms on B(λ)",
                format!("{} elements for λ = {:?}", set.len(), l.0),
                check_crystal_axioms(&iota, set, &Ambient::Tensor(l.clone()), true),
            ),
            Err(e) => CheckResult::from_error("crystal axioms on B(λ)", "generation", e),
        });
    }

    for &source in sources {
        let tag = |what: &str| format!("{what} [{source}]");
        let poly = match build(cartan, Object::Binf, source, limits) {
            Ok(p) => p,
            Err(e) => {
                checks.push(CheckResult::from_error(tag("build"), "construction", e));
                continue;
            }
        };
        checks.push(positivity_check(&poly, tag("positivity")));
        checks.push(nonzero_check(
            &poly,
            roots,
            &lowest,
            tag("nonzero coordinates"),
        ));

        let name = tag("generated = enumerated B(∞)");
        match poly.enumerate_binf_truncated(depth, limits) {
            Ok(points) => {
                checks.push(CheckResult::from_witnesses(
                    name,
                    format!(
                        "{} generated, {} enumerated at depth {depth}",
                        generated.len(),
                        points.len()
                    ),
                    set_diff_witnesses(&generated, &points, "generated", "enumerated"),
                ));
                checks.push(CheckResult::from_witnesses(
                    tag("nonnegative entries"),
                    format!("{} points", points.len()),
                    negative_entries(&points),
                ));
            }
            Err(e) => checks.push(CheckResult::from_error(name, "enumeration", e)),
        }

        if let (Some(l), Some(gl)) = (lambda, &generated_lambda) {
            checks.push(blambda_check(
                cartan,
                l,
                source,
                gl,
                limits,
                tag("generated = enumerated B(λ)"),
            ));
        }
    }

    match build(cartan, Object::Binf, Source::Closure, limits).and_then(|p| {
        let per_node = xi_closures(&iota, limits)?;
        Ok(strict_positivity_witnesses(&iota, &p.forms(), &per_node))
    }) {
        Ok(bad) => checks.push(CheckResult::from_witnesses(
            "strict positivity",
            "closure families with the per-node families",
            bad.iter().map(|f| f.to_string()).collect(),
        )),
        Err(e) => checks.push(CheckResult::from_error("strict positivity", "closure", e)),
    }

    VerifyReport { checks }
}

fn positivity_check(poly: &Polyhedron, name: String) -> CheckResult {
    let forms = poly.forms();
    let detail = format!(
        "{} forms, positivity {}",
        forms.len(),
        check_positivity(&forms)
    );
    CheckResult::from_witnesses(
        name,
        detail,
        positivity_witnesses(&forms)
            .iter()
            .map(|f| f.to_string())
            .collect(),
    )
}

fn nonzero_check(
    poly: &Polyhedron,
    roots: Option<usize>,
    lowest: &BTreeSet<crate::zcrystal::Pos>,
    name: String,
) -> CheckResult {
    let count = poly.nonzero_coordinate_count();
    let region: BTreeSet<_> = poly.nonzero_positions().into_iter().collect();
    let mut w = Vec::new();
    match roots {
        Some(r) if r == count => {}
        Some(r) => w.push(format!("{count} coordinates but {r} positive roots")),
        None => w.push("positive roots could not be computed".to_string()),
    }
    w.extend(set_diff_witnesses(
        &region,
        lowest,
        "zero-forcing region",
        "lowest weight support of B(ρ)",
    ));
    let detail = format!(
        "{count} coordinates in rows 1..={}, positive roots {}",
        poly.row_cutoff(),
        roots.map_or("?".into(), |r| r.to_string())
    );
    CheckResult::from_witnesses(name, detail, w)
}

fn blambda_check(
    cartan: &CartanDatum,
    lambda: &Weight,
    source: Source,
    generated: &crate::Result<BTreeSet<ZVector>>,
    limits: &Limits,
    name: String,
) -> CheckResult {
    let generated = match generated {
        Ok(g) => g,
        Err(e) => return CheckResult::from_error(name, "generation", e),
    };
    let poly = match build(cartan, Object::Blambda(lambda.clone()), source, limits) {
        Ok(p) => p,
        Err(e) => return CheckResult::from_error(name, "construction", e),
    };
    let points = match poly.enumerate_blambda(limits) {
        Ok(p) => p,
        Err(e) => return CheckResult::from_error(name, "enumeration", e),
    };
    let mut w = set_diff_witnesses(generated, &points, "generated", "enumerated");
    let dim = weyl_dim(cartan, lambda);
    match &dim {
        Ok(d) if *d == points.len().into() => {}
        Ok(d) => w.push(format!("{} points but Weyl dimension {d}", points.len())),
        Err(e) => w.push(e.to_string()),
    }
    w.extend(negative_entries(&points));
    let detail = format!(
        "{} generated, {} enumerated, Weyl dimension {}, ample",
        generated.len(),
        points.len(),
        dim.map_or("?".into(), |d| d.to_string())
    );
    CheckResult::from_witnesses(name, detail, w)
}
