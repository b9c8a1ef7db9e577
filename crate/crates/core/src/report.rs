//! Rendering of check results as stable-ordered JSON and as plain text.
//!
//! JSON objects use sorted keys, so a report serializes to the same bytes
//! on every run with the same input.

use std::fmt::Write as _;
use std::time::Duration;

use serde_json::{json, Map, Value as Json};

use crate::classify::{ClassReport, ClassVerdict, IdentityPair};
use crate::error::Result;
use crate::generalized::{AdjointnessReport, GeneralizedReport};
use crate::poset::{Poset, StructuredPoset};
use crate::residuation::{AxiomReport, DefinabilityReport, OperatorTable};
use crate::witness::Verdict;

/// Output of one command: a JSON body, a pass/fail outcome for the exit
/// code, and optional per-phase wall times.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: &'static str,
    pub input: Option<String>,
    pub body: Map<String, Json>,
    pub passed: bool,
    pub timings: Vec<(&'static str, Duration)>,
    pub text: String,
}

impl RunReport {
    pub fn new(command: &'static str, input: Option<String>) -> Self {
        RunReport { command, input, body: Map::new(), passed: true, timings: Vec::new(), text: String::new() }
    }

    pub fn insert(&mut self, key: &str, value: Json) {
        self.body.insert(key.to_string(), value);
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    /// Runs `f`, recording its wall time under `phase`.
    pub fn timed<T>(&mut self, phase: &'static str, f: impl FnOnce() -> T) -> T {
        let start = std::time::Instant::now();
        let out = f();
        self.timings.push((phase, start.elapsed()));
        out
    }

    pub fn to_json(&self, with_timings: bool) -> Json {
        let mut m = self.body.clone();
        m.insert("command".into(), json!(self.command));
        if let Some(i) = &self.input {
            m.insert("input".into(), json!(i));
        }
        m.insert("passed".into(), json!(self.passed));
        if with_timings {
            let t: Map<String, Json> =
                self.timings.iter().map(|(k, d)| (k.to_string(), json!(d.as_micros() as u64))).collect();
            m.insert("timings_us".into(), Json::Object(t));
        }
        Json::Object(m)
    }

    pub fn render_json(&self, with_timings: bool) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json(with_timings)).expect("json values serialize");
        s.push('\n');
        s
    }

    pub fn render_text(&self, with_timings: bool) -> String {
        let mut s = self.text.clone();
        if with_timings {
            for (phase, d) in &self.timings {
                let _ = writeln!(s, "time {phase}: {:.3} ms", d.as_secs_f64() * 1e3);
            }
        }
        s
    }
}

fn mark(holds: bool) -> &'static str {
    if holds {
        "yes"
    } else {
        "no"
    }
}

fn verdict_line(out: &mut String, p: &Poset, label: &str, v: &Verdict) {
    let _ = write!(out, "{label}: {}", mark(v.holds));
    if let Some(r) = v.reason {
        let _ = write!(out, " ({r})");
    }
    out.push('\n');
    if let Some(w) = &v.witness {
        let _ = writeln!(out, "  witness {}", w.describe(p));
    }
}

fn error_json(e: &crate::Error) -> Json {
    json!({ "holds": false, "error": e.to_string() })
}

fn pair_json(p: &Poset, pair: &IdentityPair) -> Json {
    json!({
        "first": pair.first.to_json(p),
        "second": pair.second.to_json(p),
        "identities_agree": pair.agree(),
    })
}

fn class_json(p: &Poset, c: &Result<ClassVerdict>) -> Json {
    match c {
        Ok(c) => {
            let mut v = c.verdict().to_json(p);
            let obj = v.as_object_mut().expect("object");
            obj.insert("complementation".into(), json!(c.complementation.holds));
            obj.insert("identities".into(), pair_json(p, &c.identities));
            v
        }
        Err(e) => error_json(e),
    }
}

fn result_json(p: &Poset, v: &Result<Verdict>) -> Json {
    match v {
        Ok(v) => v.to_json(p),
        Err(e) => error_json(e),
    }
}

pub fn classify_report(sp: &StructuredPoset, r: &ClassReport, out: &mut RunReport) {
    let p = &sp.poset;
    let mut preds = Map::new();
    preds.insert("complementation".into(), result_json(p, &r.complementation));
    let mut dist = r.distributive.first.to_json(p);
    dist.as_object_mut().expect("object").insert("identities".into(), pair_json(p, &r.distributive));
    preds.insert("distributive".into(), dist);
    preds.insert("boolean".into(), class_json(p, &r.boolean));
    preds.insert("pseudo_boolean".into(), class_json(p, &r.pseudo_boolean));
    preds.insert("pseudo_orthomodular".into(), class_json(p, &r.pseudo_orthomodular));
    preds.insert("lattice".into(), r.lattice.to_json(p));
    preds.insert("orthomodular_lattice".into(), result_json(p, &r.orthomodular_lattice));
    for (c, v) in &r.conditions {
        preds.insert(format!("condition_{}", c.number()), v.to_json(p));
    }
    preds.insert("top_to_bottom".into(), result_json(p, &r.top_to_bottom));
    out.insert("predicates", Json::Object(preds));
    out.insert("consistent", json!(r.consistent()));
    out.insert("size", json!(p.len()));
    out.passed = r.consistent();

    let mut t = String::new();
    let _ = writeln!(t, "{} ({} elements)", sp.name, p.len());
    let show = |t: &mut String, label: &str, v: std::result::Result<Verdict, &crate::Error>| match v {
        Ok(v) => verdict_line(t, p, label, &v),
        Err(e) => {
            let _ = writeln!(t, "{label}: error: {e}");
        }
    };
    let show_class = |t: &mut String, label: &str, c: &Result<ClassVerdict>| {
        show(t, label, c.as_ref().map(ClassVerdict::verdict));
    };
    show(&mut t, "complementation", r.complementation.as_ref().cloned());
    verdict_line(&mut t, p, "distributive", &r.distributive.first);
    show_class(&mut t, "boolean", &r.boolean);
    show_class(&mut t, "pseudo-boolean", &r.pseudo_boolean);
    show_class(&mut t, "pseudo-orthomodular", &r.pseudo_orthomodular);
    verdict_line(&mut t, p, "lattice", &r.lattice);
    show(&mut t, "orthomodular lattice", r.orthomodular_lattice.as_ref().cloned());
    for (c, v) in &r.conditions {
        verdict_line(&mut t, p, &format!("condition ({})", c.number()), v);
    }
    show(&mut t, "1'=0", r.top_to_bottom.as_ref().cloned());
    if !r.consistent() {
        t.push_str("INCONSISTENT: identity pairs disagree or the class chain is broken\n");
    }
    out.text.push_str(&t);
}

pub fn table_json(p: &Poset, t: &OperatorTable) -> Json {
    let rows = |f: &dyn Fn(usize, usize) -> crate::Subset| -> Json {
        let mut v = Vec::with_capacity(p.len() * p.len());
        for x in 0..p.len() {
            for y in 0..p.len() {
                v.push(json!({ "x": p.name(x), "y": p.name(y), "value": p.name_list(f(x, y)) }));
            }
        }
        Json::Array(v)
    };
    json!({ "M": rows(&|x, y| t.m(x, y)), "R": rows(&|x, y| t.r(x, y)) })
}

pub fn table_text(p: &Poset, t: &OperatorTable) -> String {
    let mut s = String::new();
    for (label, f) in [("M", &(|x, y| t.m(x, y)) as &dyn Fn(usize, usize) -> crate::Subset), ("R", &|x, y| t.r(x, y))] {
        for x in 0..p.len() {
            for y in 0..p.len() {
                let _ = writeln!(s, "{label}({},{}) = {}", p.name(x), p.name(y), p.render(f(x, y)));
            }
        }
    }
    s
}

pub fn axiom_report(
    sp: &StructuredPoset,
    d: &AxiomReport,
    lemma: &Verdict,
    prop: &DefinabilityReport,
    out: &mut RunReport,
) {
    let p = &sp.poset;
    out.insert(
        "axioms",
        json!({
            "unit": d.unit.to_json(p),
            "adjointness_forward": d.adjoint_forward.to_json(p),
            "adjointness_backward": d.adjoint_backward.to_json(p),
            "zero": d.zero.to_json(p),
            "commutative": d.commutative.to_json(p),
        }),
    );
    out.insert("operator_left_residuated", json!(d.left_residuated()));
    out.insert("operator_residuated", json!(d.residuated()));
    out.insert("divisibility_lemma", lemma.to_json(p));
    out.insert(
        "mutual_definability",
        json!({
            "hypothesis_met": prop.hypothesis_met,
            "r_from_m": prop.r_from_m.to_json(p),
            "m_from_r": prop.m_from_r.to_json(p),
        }),
    );
    let mut t = String::new();
    verdict_line(&mut t, p, "(i) M(x,1)=M(1,x)=L(x)", &d.unit);
    verdict_line(&mut t, p, "(ii) forward", &d.adjoint_forward);
    verdict_line(&mut t, p, "(ii) backward", &d.adjoint_backward);
    verdict_line(&mut t, p, "(iii) R(x,0)=L(x')", &d.zero);
    verdict_line(&mut t, p, "M commutative", &d.commutative);
    let _ = writeln!(t, "operator left residuated: {}", mark(d.left_residuated()));
    let _ = writeln!(t, "operator residuated: {}", mark(d.residuated()));
    verdict_line(&mut t, p, "R(x,y)=P iff x<=y", lemma);
    let _ = writeln!(t, "definability hypothesis: {}", mark(prop.hypothesis_met));
    verdict_line(&mut t, p, "L((M(y',x))')=R(x,y)", &prop.r_from_m);
    verdict_line(&mut t, p, "L((R(y,x'))')=M(x,y)", &prop.m_from_r);
    out.text.push_str(&t);
}

pub fn adjointness_json(p: &Poset, a: &AdjointnessReport, want15: bool, want16: bool) -> Json {
    let mut m = Map::new();
    m.insert("method".into(), json!(a.method.to_string()));
    if want15 {
        m.insert("15".into(), a.fifteen.to_json(p));
    }
    if want16 {
        m.insert("16".into(), a.sixteen.to_json(p));
    }
    Json::Object(m)
}

pub fn adjointness_text(p: &Poset, a: &AdjointnessReport, want15: bool, want16: bool) -> String {
    let mut t = String::new();
    if want15 {
        verdict_line(&mut t, p, &format!("(15) [{}]", a.method), &a.fifteen);
    }
    if want16 {
        verdict_line(&mut t, p, &format!("(16) [{}]", a.method), &a.sixteen);
    }
    t
}

pub fn generalized_json(p: &Poset, c: &GeneralizedReport) -> Json {
    json!({
        "unit": c.unit.to_json(p),
        "zero": c.zero.to_json(p),
        "commutative": c.commutative.to_json(p),
        "condition_11": c.cond11.to_json(p),
        "condition_12": c.cond12.to_json(p),
        "generalized_residuated": c.generalized_residuated(),
        "conditions_hold": c.conditions_hold(),
        "biconditional_holds": c.biconditional_holds(),
    })
}

pub fn generalized_text(p: &Poset, c: &GeneralizedReport) -> String {
    let mut t = String::new();
    verdict_line(&mut t, p, "(11)", &c.cond11);
    verdict_line(&mut t, p, "(12)", &c.cond12);
    let _ = writeln!(t, "generalized operator residuated: {}", mark(c.generalized_residuated()));
    let _ = writeln!(t, "biconditional with (11) and (12): {}", mark(c.biconditional_holds()));
    t
}
