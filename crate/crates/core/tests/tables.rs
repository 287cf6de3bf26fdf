//! The closed-form families and bundled tables against operator closure.

use polycrystal::forms::{apply_s_word, closure, xi_form, FormSet, LinearForm, Operator};
use polycrystal::polytope::{first_column_closure, xi_closures};
use polycrystal::rootdata::{cartan_matrix, TypeLabel};
use polycrystal::tables::{
    admissible_patterns, b_spin_word, b_spin_word_long, binf_closure_family, binf_family,
    binf_supplement, d_spin_form, d_spin_word, literal_table, row_cutoff, spin_form,
    xi_first_tables,
};
use polycrystal::zcrystal::{Iota, Pos};
use polycrystal::Limits;

use TypeLabel::{B, C, D, E6, E7, E8, F4};

fn iota(label: TypeLabel, n: usize) -> Iota {
    Iota::new(cartan_matrix(label, n).unwrap())
}

fn form(s: &str, n: usize) -> LinearForm {
    LinearForm::parse(s, n, None).unwrap()
}

#[test]
fn classical_families_match_closure() {
    let cases = (2..=6)
        .map(|n| (B, n))
        .chain((2..=6).map(|n| (C, n)))
        .chain((4..=6).map(|n| (D, n)));
    for (label, n) in cases {
        let name = label.name(n);
        let io = iota(label, n);
        let c =
            first_column_closure(&io, row_cutoff(label, n).unwrap(), &Limits::default()).unwrap();
        let fam = binf_closure_family(label, n).unwrap();
        assert!(c.violations.is_empty(), "{name}");
        assert_eq!(c.forms, fam.forms(), "{name}");
        assert_eq!(fam.errata().count(), 0, "{name}");
    }
}

#[test]
fn exceptional_tables_match_closure_after_corrections() {
    for (label, n, size) in [(F4, 4, 26), (E6, 6, 27), (E7, 7, 56), (E8, 8, 248)] {
        let io = iota(label, n);
        let rows = row_cutoff(label, n).unwrap();
        let fam = binf_closure_family(label, n).unwrap();
        assert_eq!(fam.len(), size, "{label}");
        let c = first_column_closure(&io, rows, &Limits::default()).unwrap();
        assert_eq!(c.forms, fam.forms(), "{label}");
        assert_eq!(c.forms.len(), size * rows, "{label}");
    }
}

#[test]
fn printed_misprints_are_exactly_the_recorded_errata() {
    for (label, n) in [(F4, 4), (E6, 6), (E7, 7), (E8, 8)] {
        let io = iota(label, n);
        let fam = binf_closure_family(label, n).unwrap();
        let c =
            first_column_closure(&io, row_cutoff(label, n).unwrap(), &Limits::default()).unwrap();
        for e in &fam.entries {
            let printed_ok = c.forms.contains(&e.printed);
            assert_eq!(printed_ok, !e.is_erratum(), "{label}: {}", e.printed);
            assert!(c.forms.contains(&e.form), "{label}: {}", e.form);
        }
        let expected = match label {
            F4 => 2,
            E6 | E8 => 1,
            _ => 0,
        };
        assert_eq!(fam.errata().count(), expected, "{label}");
        let missing = fam.printed_forms().difference(&c.forms).len();
        let rows = row_cutoff(label, n).unwrap();
        assert_eq!(missing, expected * rows, "{label}");
    }
}

#[test]
fn first_tables_match_per_node_closure() {
    let cases = (2..=5)
        .map(|n| (B, n))
        .chain((2..=5).map(|n| (C, n)))
        .chain((4..=6).map(|n| (D, n)))
        .chain([(F4, 4), (E6, 6)]);
    for (label, n) in cases {
        let name = label.name(n);
        let io = iota(label, n);
        let tables = xi_first_tables(label, n).unwrap();
        let closures = xi_closures(&io, &Limits::default()).unwrap();
        for i in 1..=n {
            assert_eq!(tables[i - 1], closures[i - 1], "{name} node {i}");
            assert!(tables[i - 1].contains(&xi_form(&io, i)), "{name} node {i}");
        }
    }
}

#[test]
fn e6_first_table_six_had_misprints() {
    let fam = literal_table("e6_xi6").unwrap();
    assert_eq!(fam.errata().count(), 5);
    let io = iota(E6, 6);
    let gens: FormSet = [xi_form(&io, 6)].into_iter().collect();
    let c = closure(&io, &gens, Operator::S, 60, 10_000).unwrap();
    for e in fam.errata() {
        assert!(!c.forms.contains(&e.printed), "{}", e.printed);
        assert!(c.forms.contains(&e.form), "{}", e.form);
    }
}

#[test]
fn exceptional_first_tables_are_unsupported_for_e7_e8() {
    for (label, n) in [(E7, 7), (E8, 8)] {
        let err = xi_first_tables(label, n).unwrap_err();
        assert!(err.to_string().contains("closure"), "{err}");
    }
}

#[test]
fn d_supplement_adds_spin_columns() {
    let sup = binf_supplement(D, 5).unwrap();
    let forms = sup.forms();
    assert_eq!(forms.len(), 2 * 4);
    assert!(forms.contains(&form("x_{1;4}", 5)));
    assert!(forms.contains(&form("x_{4;5}", 5)));
    assert!(binf_supplement(B, 3).unwrap().is_empty());
    assert_eq!(
        binf_family(D, 5).unwrap().len(),
        binf_closure_family(D, 5).unwrap().len() + 2
    );
}

#[test]
fn b_words_reproduce_pattern_sums() {
    for n in 2..=5 {
        let io = iota(B, n);
        let x = form(&format!("2x_{{1;{}}} - x_{{1;{n}}}", n - 1), n);
        let pats = admissible_patterns(B, n).unwrap();
        assert_eq!(pats.len(), (1 << n) - 1);
        for mu in &pats {
            assert_eq!(
                apply_s_word(&io, &x, &b_spin_word(n, mu)),
                spin_form(n, mu).unwrap(),
                "B{n} {:?}",
                mu.parts()
            );
        }
    }
}

#[test]
fn longer_b_word_overshoots_when_first_part_is_interior() {
    for n in 3..=5 {
        let io = iota(B, n);
        let x = form(&format!("2x_{{1;{}}} - x_{{1;{n}}}", n - 1), n);
        for mu in admissible_patterns(B, n).unwrap() {
            let agrees =
                apply_s_word(&io, &x, &b_spin_word_long(n, &mu)) == spin_form(n, &mu).unwrap();
            let interior = mu.at(1) >= 2 && mu.at(1) < n;
            assert_eq!(agrees, !interior, "B{n} {:?}", mu.parts());
        }
    }
}

#[test]
fn d_words_reproduce_pattern_sums() {
    for n in 4..=6 {
        let io = iota(D, n);
        for primed in [false, true] {
            let last = if primed { n } else { n - 1 };
            let x = form(&format!("x_{{1;{}}} - x_{{1;{last}}}", n - 2), n);
            for mu in admissible_patterns(D, n).unwrap() {
                let got = apply_s_word(&io, &x, &d_spin_word(n, &mu, primed));
                assert_eq!(
                    got,
                    d_spin_form(n, &mu, primed).unwrap(),
                    "D{n} {primed} {:?}",
                    mu.parts()
                );
            }
        }
    }
}

#[test]
fn spin_sums_form_the_spin_node_family() {
    // The sums over all patterns are the closure of the spin node's first form.
    let n = 4;
    let io = iota(B, n);
    let sums: FormSet = admissible_patterns(B, n)
        .unwrap()
        .iter()
        .map(|mu| spin_form(n, mu).unwrap())
        .collect();
    let gens: FormSet = [xi_form(&io, n)].into_iter().collect();
    let c = closure(&io, &gens, Operator::S, 40, 10_000).unwrap();
    assert_eq!(c.forms, sums);
    assert_eq!(c.forms.len(), 15);
}

#[test]
fn closure_words_replay() {
    let io = iota(F4, 4);
    let c = first_column_closure(&io, 1, &Limits::default()).unwrap();
    for f in c.forms.iter() {
        let (generator, word) = c.word(f).unwrap();
        let word: Vec<Pos> = word.iter().map(|&k| io.pos(k)).collect();
        assert_eq!(&apply_s_word(&io, &generator, &word), f);
    }
}
