use residua::classify::{Condition, Predicate};
use residua::enumerate::enumerate_up_to;
use residua::residuation::{
    build_lattice_residuation, build_operators, verify_axioms, verify_divisibility_lemma,
    verify_left_adjointness_lattice, verify_mutual_definability, OperatorTable, Scheme,
};
use residua::{fixtures, StructuredPoset, Subset};

fn lo(sp: &StructuredPoset, a: &[usize]) -> Subset {
    (0..sp.len()).filter(|&x| a.iter().all(|&y| sp.poset.leq(x, y))).collect()
}

fn up(sp: &StructuredPoset, a: &[usize]) -> Subset {
    (0..sp.len()).filter(|&x| a.iter().all(|&y| sp.poset.leq(y, x))).collect()
}

fn with(a: Subset, extra: &[usize]) -> Vec<usize> {
    a.iter().chain(extra.iter().copied()).collect()
}

/// `M` and `R` written out from their defining formulas.
fn naive(sp: &StructuredPoset, scheme: Scheme, x: usize, y: usize) -> (Subset, Subset) {
    let (xp, yp) = (sp.prime(x), sp.prime(y));
    match scheme {
        Scheme::Cone => {
            (lo(sp, &with(up(sp, &[x, yp]), &[y])), lo(sp, &with(up(sp, &with(lo(sp, &[y, x]), &[xp])), &[])))
        }
        Scheme::Meet => (lo(sp, &[x, y]), lo(sp, &with(up(sp, &[y, xp]), &[]))),
    }
}

fn table(sp: &StructuredPoset, scheme: Scheme) -> OperatorTable {
    build_operators(sp, scheme).unwrap()
}

#[test]
fn tables_match_the_formulas() {
    for sp in enumerate_up_to(5, &[]).unwrap().chain(fixtures::all()) {
        for scheme in [Scheme::Cone, Scheme::Meet] {
            let t = table(&sp, scheme);
            for x in 0..sp.len() {
                for y in 0..sp.len() {
                    assert_eq!((t.m(x, y), t.r(x, y)), naive(&sp, scheme, x, y), "{} {scheme} ({x},{y})", sp.name);
                }
            }
        }
    }
}

/// Adjointness halves split along the conditions: the first of each pair of
/// conditions gives the forward implication, the second the backward one.
#[test]
fn conditions_give_adjointness_halves() {
    let cases = [
        (Scheme::Cone, Condition::One, true),
        (Scheme::Cone, Condition::Two, false),
        (Scheme::Meet, Condition::Seven, true),
        (Scheme::Meet, Condition::Eight, false),
    ];
    for (scheme, cond, forward) in cases {
        let mut count = 0;
        for sp in enumerate_up_to(6, &[Predicate::Cond(cond)]).unwrap() {
            let d = verify_axioms(&sp, &table(&sp, scheme)).unwrap();
            let half = if forward { &d.adjoint_forward } else { &d.adjoint_backward };
            assert!(half.holds, "{} ({}) {scheme}", sp.name, cond.number());
            count += 1;
        }
        assert!(count > 0);
    }
}

#[test]
fn fixture_axiom_verdicts() {
    // (left residuated, residuated) per scheme
    let expected = [
        ("chain2", (true, true), (true, true)),
        ("boole4", (true, true), (true, true)),
        ("boole8", (true, true), (true, true)),
        ("mo2", (true, false), (false, false)),
        ("o6", (false, false), (false, false)),
        ("fig1", (true, false), (false, false)),
    ];
    for (name, cone, meet) in expected {
        let sp = fixtures::load(name).unwrap();
        for (scheme, want) in [(Scheme::Cone, cone), (Scheme::Meet, meet)] {
            let d = verify_axioms(&sp, &table(&sp, scheme)).unwrap();
            assert_eq!((d.left_residuated(), d.residuated()), want, "{name} {scheme}");
        }
    }
}

#[test]
fn fig1_cone_scheme_is_not_commutative_at_b_f() {
    let sp = fixtures::load("fig1").unwrap();
    let p = &sp.poset;
    let t = table(&sp, Scheme::Cone);
    let d = verify_axioms(&sp, &t).unwrap();
    let w = d.commutative.witness.unwrap();
    let (b, f) = (p.index_of("b").unwrap(), p.index_of("f").unwrap());
    assert_eq!((w.elem_of("x"), w.elem_of("y")), (Some(b), Some(f)));
    assert_ne!(t.m(b, f), t.m(f, b));
}

#[test]
fn o6_adjointness_witness_replays() {
    let sp = fixtures::load("o6").unwrap();
    let p = &sp.poset;
    let t = table(&sp, Scheme::Cone);
    let v = verify_axioms(&sp, &t).unwrap().adjointness();
    let w = v.witness.expect("o6 fails adjointness");
    let (x, y, z) = (w.elem_of("x").unwrap(), w.elem_of("y").unwrap(), w.elem_of("z").unwrap());
    let left = t.m(x, y).is_subset(p.down(z));
    let right = p.down(x).is_subset(t.r(y, z));
    assert_ne!(left, right);
}

#[test]
fn zero_law_and_unit_hold_in_both_schemes_on_complemented_structures() {
    for sp in enumerate_up_to(6, &[Predicate::Complementation]).unwrap() {
        for scheme in [Scheme::Cone, Scheme::Meet] {
            let d = verify_axioms(&sp, &table(&sp, scheme)).unwrap();
            assert!(d.unit.holds && d.zero.holds, "{} {scheme}", sp.name);
        }
    }
}

#[test]
fn divisibility_lemma_on_fixtures() {
    for sp in fixtures::all() {
        for scheme in [Scheme::Cone, Scheme::Meet] {
            let t = table(&sp, scheme);
            let d = verify_axioms(&sp, &t).unwrap();
            if d.unit.holds && d.adjointness().holds {
                assert!(verify_divisibility_lemma(&sp, &t).holds, "{} {scheme}", sp.name);
            }
        }
    }
}

#[test]
fn mutual_definability() {
    for name in ["fig1", "mo2", "boole8"] {
        let sp = fixtures::load(name).unwrap();
        let r = verify_mutual_definability(&sp, Scheme::Cone).unwrap();
        assert!(r.hypothesis_met && r.holds(), "{name}");
    }
    let sp = fixtures::load("o6").unwrap();
    let r = verify_mutual_definability(&sp, Scheme::Meet).unwrap();
    assert!(r.hypothesis_met && r.holds());
    assert!(!verify_mutual_definability(&sp, Scheme::Cone).unwrap().hypothesis_met);
}

#[test]
fn lattice_construction_on_boolean_algebra() {
    let sp = fixtures::load("boole8").unwrap();
    let p = &sp.poset;
    let t = build_lattice_residuation(&sp).unwrap();
    for x in 0..p.len() {
        for y in 0..p.len() {
            assert_eq!(t.odot(x, y), p.meet(x, y).unwrap());
            assert_eq!(t.arrow(x, y), p.join(sp.prime(x), y).unwrap());
        }
    }
    assert!(verify_left_adjointness_lattice(&sp, &t).holds);
}

#[test]
fn lattice_adjointness_on_orthomodular_fixtures_and_o6() {
    for name in ["chain2", "boole4", "boole8", "mo2"] {
        let sp = fixtures::load(name).unwrap();
        let t = build_lattice_residuation(&sp).unwrap();
        assert!(verify_left_adjointness_lattice(&sp, &t).holds, "{name}");
    }
    let sp = fixtures::load("o6").unwrap();
    let p = &sp.poset;
    let t = build_lattice_residuation(&sp).unwrap();
    let w = verify_left_adjointness_lattice(&sp, &t).witness.unwrap();
    let a = p.index_of("a");
    assert_eq!((w.elem_of("x"), w.elem_of("y"), w.elem_of("z")), (a, p.index_of("b"), a));
}
