//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; the process exits non-zero
//! if any criterion fails.

use std::process::Command;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;

use residua::classify::{
    check_condition, is_complementation, is_distributive, is_lattice, is_orthomodular_lattice, is_pseudo_orthomodular,
    Claim, Condition, Predicate,
};
use residua::enumerate::{enumerate_up_to, find_counterexample, EnumSpec};
use residua::fixtures;
use residua::generalized::{
    direct_adjointness, element_level_counterparts, reduction_adjointness, singleton_restriction, verify_generalized,
    Caps, Domain, Method,
};
use residua::residuation::{
    build_lattice_residuation, build_operators, verify_axioms, verify_divisibility_lemma,
    verify_left_adjointness_lattice, verify_mutual_definability, Scheme,
};
use residua::{StructuredPoset, Verdict};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn structures(max: usize, require: &[Predicate]) -> Vec<StructuredPoset> {
    enumerate_up_to(max, require).expect("sizes within cap").collect()
}

/// Names of the first few structures failing `bad`, or the population size.
fn zero_failures(pop: &[StructuredPoset], bad: impl Fn(&StructuredPoset) -> bool + Sync) -> Outcome {
    let failures: Vec<&str> = pop.par_iter().filter(|sp| bad(sp)).map(|sp| sp.name.as_str()).collect();
    if failures.is_empty() {
        Ok(format!("{} structures, 0 failures", pop.len()))
    } else {
        let shown: Vec<&str> = failures.iter().take(5).copied().collect();
        Err(format!("{} failures, first: {}", failures.len(), shown.join(", ")))
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fig1_fidelity() -> Outcome {
    let start = Instant::now();
    let sp = fixtures::load("fig1").map_err(|e| e.to_string())?;
    let p = &sp.poset;
    ensure(p.is_bounded(), "fig1 is not bounded")?;
    ensure(is_complementation(&sp).map_err(|e| e.to_string())?.holds, "no complementation")?;
    ensure(is_pseudo_orthomodular(&sp).map_err(|e| e.to_string())?.holds(), "not pseudo-orthomodular")?;
    ensure(!is_distributive(p).holds(), "distributive")?;
    let lat = is_lattice(p);
    let w = lat.witness.ok_or("fig1 reported as a lattice")?;
    let (b, c) = (p.index_of("b").unwrap(), p.index_of("c").unwrap());
    ensure(w.elem_of("x") == Some(b) && w.elem_of("y") == Some(c), format!("lattice witness {}", w.describe(p)))?;
    ensure(p.leq(b, sp.prime(c)), "b is not below c'")?;
    ensure(p.join(b, c).is_none(), "b and c have a join")?;
    let elapsed = start.elapsed();
    ensure(elapsed.as_secs_f64() < 1.0, format!("took {elapsed:?}"))?;
    Ok(format!("all four facts hold in {:.1} ms", elapsed.as_secs_f64() * 1e3))
}

fn axioms_pass(sp: &StructuredPoset, scheme: Scheme) -> bool {
    let t = build_operators(sp, scheme).expect("bounded");
    verify_axioms(sp, &t).expect("bounded").left_residuated()
}

fn cone_scheme_population() -> Outcome {
    let req = [Predicate::Cond(Condition::One), Predicate::Cond(Condition::Two), Predicate::TopToBottom];
    let pop = structures(6, &req);
    zero_failures(&pop, |sp| !axioms_pass(sp, Scheme::Cone))
}

fn meet_scheme_population() -> Outcome {
    let req = [Predicate::Cond(Condition::Seven), Predicate::Cond(Condition::Eight)];
    let pop = structures(6, &req);
    zero_failures(&pop, |sp| {
        let t = build_operators(sp, Scheme::Meet).expect("bounded");
        !verify_axioms(sp, &t).expect("bounded").residuated()
    })
}

fn sufficient_condition_examples() -> Outcome {
    let mut pom = structures(6, &[Predicate::PseudoOrthomodular]);
    let mut pb = structures(6, &[Predicate::PseudoBoolean]);
    let fig1 = fixtures::load("fig1").unwrap();
    if Predicate::PseudoOrthomodular.evaluate(&fig1) {
        pom.push(fig1.clone());
    }
    if Predicate::PseudoBoolean.evaluate(&fig1) {
        pb.push(fig1);
    }
    let a = zero_failures(&pom, |sp| {
        !(check_condition(sp, Condition::One).holds && check_condition(sp, Condition::Two).holds)
    })?;
    let b = zero_failures(&pb, |sp| {
        !(check_condition(sp, Condition::Seven).holds && check_condition(sp, Condition::Eight).holds)
    })?;
    Ok(format!("pseudo-orthomodular: {a}; pseudo-Boolean: {b}"))
}

fn implication_chain() -> Outcome {
    let mut pop = structures(6, &[Predicate::Involution]);
    pop.extend(fixtures::all());
    let chain = zero_failures(&pop, |sp| {
        let (b, pb, pom) = (
            Predicate::Boolean.evaluate(sp),
            Predicate::PseudoBoolean.evaluate(sp),
            Predicate::PseudoOrthomodular.evaluate(sp),
        );
        (b && !pb) || (pb && !pom)
    })?;
    let fixtures = fixtures::all();
    let spec = EnumSpec::new(6);
    for forward in ["boolean=>pseudo-boolean", "pseudo-boolean=>pseudo-orthomodular"] {
        let claim: Claim = forward.parse().unwrap();
        if let Some(cx) = find_counterexample(&spec, &claim, &fixtures).map_err(|e| e.to_string())? {
            return Err(format!("{forward} refuted by {}", cx.name));
        }
    }
    let claim: Claim = "pseudo-orthomodular=>boolean".parse().unwrap();
    let cx = find_counterexample(&spec, &claim, &fixtures)
        .map_err(|e| e.to_string())?
        .ok_or("no counterexample to pseudo-orthomodular=>boolean")?;
    Ok(format!("chain: {chain}; pseudo-orthomodular=>boolean refuted by {}", cx.name))
}

fn lattice_bridge() -> Outcome {
    let pop: Vec<StructuredPoset> =
        structures(6, &[Predicate::Complementation]).into_iter().filter(|sp| is_lattice(&sp.poset).holds).collect();
    let agree = zero_failures(&pop, |sp| {
        Predicate::PseudoOrthomodular.evaluate(sp) != Predicate::OrthomodularLattice.evaluate(sp)
    })?;
    let oml: Vec<StructuredPoset> =
        pop.iter().filter(|sp| Predicate::OrthomodularLattice.evaluate(sp)).cloned().collect();
    let adj = zero_failures(&oml, |sp| {
        let t = build_lattice_residuation(sp).expect("lattice with complementation");
        !verify_left_adjointness_lattice(sp, &t).holds
    })?;
    let o6 = fixtures::load("o6").unwrap();
    ensure(!is_orthomodular_lattice(&o6).unwrap().holds, "o6 reported orthomodular")?;
    let t = build_lattice_residuation(&o6).map_err(|e| e.to_string())?;
    let v = verify_left_adjointness_lattice(&o6, &t);
    let w = v.witness.ok_or("left adjointness holds on o6")?;
    Ok(format!(
        "equivalence: {agree}; adjointness on orthomodular lattices: {adj}; o6 fails at {}",
        w.describe(&o6.poset)
    ))
}

fn divisibility_lemma() -> Outcome {
    let pop = structures(6, &[]);
    zero_failures(&pop, |sp| {
        [Scheme::Cone, Scheme::Meet].into_iter().any(|scheme| {
            let t = build_operators(sp, scheme).expect("bounded");
            let d = verify_axioms(sp, &t).expect("bounded");
            d.unit.holds && d.adjointness().holds && !verify_divisibility_lemma(sp, &t).holds
        })
    })
}

fn mutual_definability() -> Outcome {
    let fig1 = fixtures::load("fig1").unwrap();
    let mut pom = structures(6, &[Predicate::PseudoOrthomodular]);
    pom.push(fig1.clone());
    let mut comp = structures(6, &[Predicate::Complementation]);
    comp.push(fig1);
    let cone = zero_failures(&pom, |sp| !verify_mutual_definability(sp, Scheme::Cone).expect("bounded").holds())?;
    let meet = zero_failures(&comp, |sp| !verify_mutual_definability(sp, Scheme::Meet).expect("bounded").holds())?;
    Ok(format!("cone on pseudo-orthomodular: {cone}; meet on complemented: {meet}"))
}

fn same_verdict(a: &Verdict, b: &Verdict) -> bool {
    a.holds == b.holds && a.witness.is_some() == b.witness.is_some()
}

fn subset_reduction() -> Outcome {
    let caps = Caps::default();
    let pop = structures(5, &[]);
    let start = Instant::now();
    let agree = zero_failures(&pop, |sp| {
        let direct = direct_adjointness(sp, Domain::NonEmpty, caps).expect("within caps");
        let red = reduction_adjointness(sp, Domain::NonEmpty, caps).expect("within caps");
        !(same_verdict(&direct.fifteen, &red.fifteen) && same_verdict(&direct.sixteen, &red.sixteen))
    })?;
    let bicond = zero_failures(&pop, |sp| {
        !verify_generalized(sp, Method::Reduction, Domain::NonEmpty, caps).expect("within caps").biconditional_holds()
    })?;
    Ok(format!("direct vs reduction: {agree}; biconditional: {bicond}; {:.1} s", start.elapsed().as_secs_f64()))
}

fn singleton_coherence() -> Outcome {
    let mut pop = structures(6, &[]);
    let mut rng = StdRng::seed_from_u64(0x5eed);
    pop.shuffle(&mut rng);
    pop.truncate(50);
    let caps = Caps::default();
    let matches = |a: &Verdict, b: &Verdict| {
        a.holds == b.holds
            && match (&a.witness, &b.witness) {
                (None, None) => true,
                (Some(x), Some(y)) => x.same_evidence(y),
                _ => false,
            }
    };
    let with_failures = pop
        .iter()
        .filter(|sp| {
            let s = element_level_counterparts(sp).unwrap();
            !(s.cond11.holds && s.cond12.holds && s.fifteen.holds && s.sixteen.holds)
        })
        .count();
    let r = zero_failures(&pop, |sp| {
        let s = singleton_restriction(sp, caps).expect("within caps");
        let e = element_level_counterparts(sp).expect("bounded");
        !(matches(&s.cond11, &e.cond11)
            && matches(&s.cond12, &e.cond12)
            && matches(&s.fifteen, &e.fifteen)
            && matches(&s.sixteen, &e.sixteen))
    })?;
    Ok(format!("{r} ({with_failures} with at least one witness compared)"))
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_residua");
    let runs: &[&[&str]] = &[
        &["classify", "fig1"],
        &["classify", "o6"],
        &["residuate", "fig1", "--scheme", "cone"],
        &["residuate", "boole4", "--scheme", "meet"],
        &["tables", "fig1", "--scheme", "cone"],
        &["generalized", "fig1", "--method", "reduction"],
        &["generalized", "boole8", "--method", "both"],
        &["enumerate", "--size", "5", "--list"],
        &["enumerate", "--size", "6", "--claim", "complementation=>pseudo-orthomodular"],
    ];
    for args in runs {
        let mut outputs = Vec::new();
        for threads in ["1", "8", "1", "8"] {
            let out = Command::new(bin)
                .args(*args)
                .args(["--json", "--threads", threads])
                .output()
                .map_err(|e| e.to_string())?;
            if out.status.code() == Some(2) {
                return Err(format!("{args:?} rejected: {}", String::from_utf8_lossy(&out.stderr)));
            }
            outputs.push(out.stdout);
        }
        if outputs.windows(2).any(|w| w[0] != w[1]) {
            return Err(format!("{args:?} output differs between runs"));
        }
    }
    Ok(format!("{} commands byte-identical across 4 runs each", runs.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("fig1 fidelity", fig1_fidelity),
        ("cone scheme under (1), (2), 1'=0", cone_scheme_population),
        ("meet scheme under (7), (8)", meet_scheme_population),
        ("examples of sufficient conditions", sufficient_condition_examples),
        ("implication chain", implication_chain),
        ("lattice bridge", lattice_bridge),
        ("divisibility lemma", divisibility_lemma),
        ("mutual definability", mutual_definability),
        ("subset adjointness reduction", subset_reduction),
        ("singleton coherence", singleton_coherence),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
