//! Verdicts and counterexample witnesses.

use rayon::prelude::*;
use serde_json::{json, Map, Value as Json};

use crate::poset::Poset;
use crate::subset::Subset;

/// A value bound to a variable of a refuted law.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Binding {
    Elem(usize),
    Set(Subset),
}

/// A concrete refutation: the variable assignment and the evaluated sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Which law or clause failed.
    pub clause: &'static str,
    pub bindings: Vec<(&'static str, Binding)>,
    pub sides: Vec<(&'static str, Subset)>,
}

impl Witness {
    pub fn new(clause: &'static str) -> Self {
        Witness { clause, bindings: Vec::new(), sides: Vec::new() }
    }

    pub fn elem(mut self, var: &'static str, x: usize) -> Self {
        self.bindings.push((var, Binding::Elem(x)));
        self
    }

    pub fn set(mut self, var: &'static str, a: Subset) -> Self {
        self.bindings.push((var, Binding::Set(a)));
        self
    }

    pub fn side(mut self, label: &'static str, s: Subset) -> Self {
        self.sides.push((label, s));
        self
    }

    /// Element bound to `var`, if it was bound as an element.
    pub fn elem_of(&self, var: &str) -> Option<usize> {
        self.bindings.iter().find_map(|(v, b)| match b {
            Binding::Elem(x) if *v == var => Some(*x),
            _ => None,
        })
    }

    pub fn side_of(&self, label: &str) -> Option<Subset> {
        self.sides.iter().find(|(l, _)| *l == label).map(|(_, s)| *s)
    }

    /// Same bound values and same evaluated sets, ignoring labels.
    pub fn same_evidence(&self, other: &Witness) -> bool {
        let vals = |w: &Witness| w.bindings.iter().map(|(_, b)| *b).collect::<Vec<_>>();
        let sets = |w: &Witness| w.sides.iter().map(|(_, s)| *s).collect::<Vec<_>>();
        vals(self) == vals(other) && sets(self) == sets(other)
    }

    pub fn to_json(&self, p: &Poset) -> Json {
        let bind: Map<String, Json> = self
            .bindings
            .iter()
            .map(|(v, b)| {
                let val = match b {
                    Binding::Elem(x) => json!(p.name(*x)),
                    Binding::Set(s) => json!(p.name_list(*s)),
                };
                (v.to_string(), val)
            })
            .collect();
        let sides: Map<String, Json> =
            self.sides.iter().map(|(l, s)| (l.to_string(), json!(p.name_list(*s)))).collect();
        json!({ "clause": self.clause, "bindings": bind, "sides": sides })
    }

    pub fn describe(&self, p: &Poset) -> String {
        let bind: Vec<String> = self
            .bindings
            .iter()
            .map(|(v, b)| match b {
                Binding::Elem(x) => format!("{v}={}", p.name(*x)),
                Binding::Set(s) => format!("{v}={}", p.render(*s)),
            })
            .collect();
        let sides: Vec<String> = self.sides.iter().map(|(l, s)| format!("{l} = {}", p.render(*s))).collect();
        format!("{} at {}: {}", self.clause, bind.join(", "), sides.join("; "))
    }
}

/// Outcome of checking one universally quantified law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// Short machine-readable reason for a failure without a witness.
    pub reason: Option<&'static str>,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict { holds: true, reason: None, witness: None }
    }

    pub fn fail(w: Witness) -> Self {
        Verdict { holds: false, reason: None, witness: Some(w) }
    }

    pub fn from_search(found: Option<Witness>) -> Self {
        match found {
            Some(w) => Verdict::fail(w),
            None => Verdict::pass(),
        }
    }

    pub fn with_reason(mut self, reason: &'static str) -> Self {
        self.reason = Some(reason);
        self
    }

    /// First failure of `self`, then of `other`.
    pub fn and(self, other: Verdict) -> Verdict {
        if self.holds {
            other
        } else {
            self
        }
    }

    pub fn to_json(&self, p: &Poset) -> Json {
        let mut m = Map::new();
        m.insert("holds".into(), json!(self.holds));
        if let Some(r) = self.reason {
            m.insert("reason".into(), json!(r));
        }
        if let Some(w) = &self.witness {
            m.insert("witness".into(), w.to_json(p));
        }
        Json::Object(m)
    }
}

/// Least failing index over `0..n` in parallel; ties resolve to the
/// smallest index so the result is independent of the thread count.
pub(crate) fn first_failure<F>(n: usize, check: F) -> Option<Witness>
where
    F: Fn(usize) -> Option<Witness> + Sync + Send,
{
    (0..n).into_par_iter().find_map_first(check)
}

/// Sequential lexicographic search over pairs.
pub(crate) fn pairs<F>(n: usize, mut check: F) -> Option<Witness>
where
    F: FnMut(usize, usize) -> Option<Witness>,
{
    for x in 0..n {
        for y in 0..n {
            if let Some(w) = check(x, y) {
                return Some(w);
            }
        }
    }
    None
}

/// Lexicographic search over triples, parallel over the first coordinate.
pub(crate) fn triples<F>(n: usize, check: F) -> Option<Witness>
where
    F: Fn(usize, usize, usize) -> Option<Witness> + Sync + Send,
{
    first_failure(n, |x| {
        for y in 0..n {
            for z in 0..n {
                if let Some(w) = check(x, y, z) {
                    return Some(w);
                }
            }
        }
        None
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_is_least_index() {
        let w = first_failure(1000, |i| (i % 7 == 3).then(|| Witness::new("t").elem("i", i)));
        assert_eq!(w.unwrap().elem_of("i"), Some(3));
    }

    #[test]
    fn verdict_and_keeps_first_failure() {
        let a = Verdict::fail(Witness::new("a"));
        let b = Verdict::fail(Witness::new("b"));
        assert_eq!(a.clone().and(b.clone()).witness.unwrap().clause, "a");
        assert_eq!(Verdict::pass().and(b).witness.unwrap().clause, "b");
        assert!(Verdict::pass().and(Verdict::pass()).holds);
    }
}
