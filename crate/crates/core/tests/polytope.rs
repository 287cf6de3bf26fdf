//! Assembly, membership, enumeration and the verification harness.

use std::collections::BTreeSet;

use polycrystal::forms::LinearForm;
use polycrystal::polytope::{
    build, check_table_against_closure, closure_family, lowest_weight_element, verify, CheckStatus,
    Object, Polyhedron, Source,
};
use polycrystal::rootdata::{cartan_matrix, weyl_dim_u64, TypeLabel, Weight};
use polycrystal::tables::binf_closure_family;
use polycrystal::zcrystal::{Ambient, Iota, Pos, ZVector};
use polycrystal::{Error, Limits};

use TypeLabel::{A, B, C, D, E6, F4, G2};

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

fn form(s: &str, n: usize) -> LinearForm {
    LinearForm::parse(s, n, None).unwrap()
}

#[test]
fn b2_table_system() {
    let p = poly(B, 2, Object::Binf, Source::Table);
    let forms = p.forms();
    for s in [
        "x_{1;1}",
        "x_{1;2} - x_{2;1}",
        "x_{2;1} - x_{2;2}",
        "x_{2;2} - x_{3;1}",
    ] {
        assert!(forms.contains(&form(s, 2)), "{s}");
    }
    // Rows from 3 on are forced to zero.
    assert!(forms.contains(&form("-x_{3;1}", 2)));
    assert_eq!(p.nonzero_coordinate_count(), 4);
    assert!(forms.iter().all(|f| !f.has_constant()));
}

#[test]
fn b2_blambda_lifts_per_node_families() {
    let l = Weight(vec![1, 1]);
    let p = poly(B, 2, Object::Blambda(l), Source::Table);
    let lam = p.lambda_forms();
    assert!(lam.contains(&form("λ_1 - x_{1;1}", 2)));
    assert!(lam.contains(&form("λ_2 + 2x_{1;1} - x_{1;2}", 2)));
    assert!(lam.contains(&form("λ_2 - x_{2;2}", 2)));
    assert_eq!(lam.len(), 4);
}

#[test]
fn membership_examples() {
    for source in Source::ALL {
        let p = poly(B, 2, Object::Binf, source);
        assert!(p.contains(&ZVector::zero(2)));
        assert!(!p.contains(&v(2, &[((2, 1), 1)])));
        assert!(p.contains(&v(2, &[((1, 2), 1), ((2, 1), 1)])));
    }
    let p = poly(
        E6,
        6,
        Object::Blambda(Weight::fundamental(6, 1)),
        Source::Table,
    );
    assert!(p.contains(&ZVector::zero(6)));
}

#[test]
fn membership_agrees_with_generation() {
    let io = Iota::new(cartan_matrix(C, 3).unwrap());
    let p = poly(C, 3, Object::Binf, Source::Table);
    let inside = io.generate_binf(4);
    for x in &inside {
        assert!(p.contains(x), "{x}");
    }
    // Every other vector with entries in {0, 1} on the first rows lies outside.
    let positions = p.nonzero_positions();
    for mask in 0u32..(1 << 9) {
        let x = ZVector::from_entries(
            3,
            positions
                .iter()
                .take(9)
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &q)| (q, 1)),
        );
        if x.total() <= 4 {
            assert_eq!(p.contains(&x), inside.contains(&x), "{x}");
        }
    }
}

#[test]
fn enumerate_blambda_examples() {
    let p = poly(B, 2, Object::Blambda(Weight::zero(2)), Source::Table);
    assert_eq!(
        p.enumerate_blambda(&Limits::default()).unwrap(),
        BTreeSet::from([ZVector::zero(2)])
    );
    let p = poly(B, 2, Object::Blambda(Weight(vec![0, 1])), Source::Table);
    assert_eq!(p.enumerate_blambda(&Limits::default()).unwrap().len(), 4);
    for node in [1, 5] {
        let l = Weight::fundamental(6, node);
        let p = poly(E6, 6, Object::Blambda(l), Source::Closure);
        assert_eq!(p.enumerate_blambda(&Limits::default()).unwrap().len(), 27);
    }
}

#[test]
fn enumerate_binf_examples() {
    let p = poly(A, 1, Object::Binf, Source::Closure);
    assert_eq!(
        p.enumerate_binf_truncated(0, &Limits::default()).unwrap(),
        BTreeSet::from([ZVector::zero(1)])
    );
    assert_eq!(
        p.enumerate_binf_truncated(3, &Limits::default())
            .unwrap()
            .len(),
        4
    );
    let io = Iota::new(cartan_matrix(B, 2).unwrap());
    for source in Source::ALL {
        let p = poly(B, 2, Object::Binf, source);
        for d in 0..=7 {
            assert_eq!(
                p.enumerate_binf_truncated(d, &Limits::default()).unwrap(),
                io.generate_binf(d),
                "depth {d}"
            );
        }
    }
}

#[test]
fn enumeration_respects_the_cap() {
    let p = poly(B, 3, Object::Binf, Source::Table);
    let tight = Limits {
        enumeration_cap: 10,
        ..Limits::default()
    };
    assert!(matches!(
        p.enumerate_binf_truncated(5, &tight),
        Err(Error::EnumerationCap(10))
    ));
}

#[test]
fn closure_cap_is_reported() {
    let c = cartan_matrix(E6, 6).unwrap();
    let tight = Limits {
        closure_cap: 5,
        ..Limits::default()
    };
    assert!(matches!(
        build(&c, Object::Binf, Source::Closure, &tight),
        Err(Error::ClosureCap(5))
    ));
}

#[test]
fn sources_agree_on_points() {
    for (label, n, lambda) in [
        (B, 3, vec![1, 0, 1]),
        (C, 3, vec![0, 1, 0]),
        (D, 4, vec![1, 0, 0, 1]),
        (F4, 4, vec![0, 0, 0, 1]),
    ] {
        let l = Weight(lambda);
        let a = poly(label, n, Object::Blambda(l.clone()), Source::Table)
            .enumerate_blambda(&Limits::default())
            .unwrap();
        let b = poly(label, n, Object::Blambda(l.clone()), Source::Closure)
            .enumerate_blambda(&Limits::default())
            .unwrap();
        assert_eq!(a, b, "{}", label.name(n));
        assert_eq!(
            a.len() as u64,
            weyl_dim_u64(&cartan_matrix(label, n).unwrap(), &l).unwrap()
        );
    }
}

#[test]
fn truncations_are_monotone() {
    let p = poly(D, 4, Object::Binf, Source::Table);
    let mut prev = BTreeSet::new();
    for d in 0..=5 {
        let cur = p.enumerate_binf_truncated(d, &Limits::default()).unwrap();
        assert!(prev.is_subset(&cur));
        prev = cur;
    }
}

#[test]
fn points_lie_in_the_zero_forcing_region() {
    for source in Source::ALL {
        let p = poly(F4, 4, Object::Binf, source);
        let region: BTreeSet<Pos> = p.nonzero_positions().into_iter().collect();
        for x in p.enumerate_binf_truncated(4, &Limits::default()).unwrap() {
            assert!(
                x.nonzero().all(|(q, c)| c > 0 && region.contains(&q)),
                "{x}"
            );
        }
    }
}

#[test]
fn closure_source_needs_few_extra_generators() {
    let limits = Limits::default();
    for (label, n, extra) in [
        (B, 4, 0),
        (C, 4, 0),
        (D, 5, 2),
        (F4, 4, 0),
        (G2, 2, 0),
        (A, 3, 2),
    ] {
        let io = Iota::new(cartan_matrix(label, n).unwrap());
        let fam = closure_family(&io, &limits).unwrap();
        let count = (2..=n)
            .filter(|&c| fam.contains(&LinearForm::coordinate(n, Pos::new(1, c))))
            .count();
        assert!(count <= extra, "{}: {count}", label.name(n));
        if label == D {
            assert!(count >= 1, "{}", label.name(n));
        }
    }
}

#[test]
fn crystal_graph_examples() {
    let io = Iota::new(cartan_matrix(B, 2).unwrap());
    let g = io.crystal_graph(&Weight::zero(2), 100).unwrap();
    assert_eq!((g.nodes.len(), g.edges.len()), (1, 0));

    let io = Iota::new(cartan_matrix(A, 1).unwrap());
    let g = io.crystal_graph(&Weight(vec![2]), 100).unwrap();
    assert_eq!(g.nodes.len(), 3);
    assert_eq!(g.edges.len(), 2);
    assert!(g.edges.iter().all(|e| e.1 == 1));

    let io = Iota::new(cartan_matrix(B, 2).unwrap());
    let g = io.crystal_graph(&Weight(vec![0, 1]), 100).unwrap();
    assert_eq!(g.nodes.len(), 4);
    // Connected, with 0 as the only node without incoming edges.
    let targets: BTreeSet<usize> = g.edges.iter().map(|e| e.2).collect();
    let sources: Vec<usize> = (0..g.nodes.len())
        .filter(|k| !targets.contains(k))
        .collect();
    assert_eq!(sources.len(), 1);
    assert!(g.nodes[sources[0]].is_empty());
}

#[test]
fn graph_has_a_unique_source_for_every_tested_weight() {
    for (label, n, lambda) in [
        (C, 3, vec![1, 1, 0]),
        (G2, 2, vec![1, 1]),
        (D, 4, vec![0, 0, 1, 1]),
    ] {
        let io = Iota::new(cartan_matrix(label, n).unwrap());
        let g = io.crystal_graph(&Weight(lambda), 100_000).unwrap();
        let targets: BTreeSet<usize> = g.edges.iter().map(|e| e.2).collect();
        let sources: Vec<&ZVector> = (0..g.nodes.len())
            .filter(|k| !targets.contains(k))
            .map(|k| &g.nodes[k])
            .collect();
        assert_eq!(sources, vec![&ZVector::zero(n)], "{}", label.name(n));
    }
}

#[test]
fn lowest_weight_of_rho_lies_in_the_region() {
    for (label, n) in [(B, 3), (C, 4), (D, 5), (F4, 4)] {
        let name = label.name(n);
        let io = Iota::new(cartan_matrix(label, n).unwrap());
        let low = lowest_weight_element(&io);
        let amb = Ambient::Tensor(Weight(vec![1; n]));
        assert!((1..=n).all(|i| io.f_tilde(&low, &amb, i).is_none()));
        let w = io.weight(&low, &amb);
        assert_eq!(w.0, vec![-1; n], "{name}");
        let p = poly(label, n, Object::Blambda(Weight(vec![1; n])), Source::Table);
        assert!(p.contains(&low));
    }
}

#[test]
fn verify_b2_with_lambda() {
    let c = cartan_matrix(B, 2).unwrap();
    let r = verify(
        &c,
        Some(&Weight(vec![1, 0])),
        6,
        &Source::ALL,
        &Limits::default(),
    );
    assert!(r.passed(), "{r}");
    assert!(
        r.checks.iter().all(|c| c.status == CheckStatus::Pass),
        "{r}"
    );
    assert!(r
        .get("generated = enumerated B(λ) [table]")
        .unwrap()
        .detail
        .contains("Weyl dimension 5"));
}

#[test]
fn verify_f4_without_lambda() {
    let c = cartan_matrix(F4, 4).unwrap();
    let r = verify(&c, None, 5, &Source::ALL, &Limits::default());
    assert!(r.passed(), "{r}");
    for name in [
        "closure = table",
        "generated = enumerated B(∞) [table]",
        "generated = enumerated B(∞) [closure]",
        "positivity [table]",
        "strict positivity",
        "nonzero coordinates [table]",
        "nonnegative entries [table]",
    ] {
        assert_eq!(
            r.get(name).map(|c| c.status),
            Some(CheckStatus::Pass),
            "{name}\n{r}"
        );
    }
}

#[test]
fn corrupted_table_fails_with_a_witness() {
    let io = Iota::new(cartan_matrix(F4, 4).unwrap());
    let mut fam = binf_closure_family(F4, 4).unwrap();
    let target = fam
        .entries
        .iter()
        .position(|e| e.form.coeffs().len() > 1)
        .unwrap();
    fam.entries[target].form = fam.entries[target].form.scaled(2);
    let check = check_table_against_closure(&io, &fam, &Limits::default());
    assert_eq!(check.status, CheckStatus::Fail);
    assert!(!check.witnesses.is_empty() && check.witnesses.len() <= 10);
    assert!(check.witnesses.iter().any(|w| w.contains("only in table")));
}

#[test]
fn verify_without_tables_skips_table_checks() {
    let c = cartan_matrix(G2, 2).unwrap();
    let r = verify(
        &c,
        Some(&Weight(vec![0, 1])),
        5,
        &Source::ALL,
        &Limits::default(),
    );
    assert!(r.passed(), "{r}");
    assert_eq!(
        r.get("closure = table").unwrap().status,
        CheckStatus::Skipped
    );
    assert_eq!(
        r.get("generated = enumerated B(λ) [closure]")
            .unwrap()
            .status,
        CheckStatus::Pass
    );
}
