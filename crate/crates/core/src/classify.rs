//! Structural predicates on posets with a unary operation.
//!
//! Each predicate is decided by exhaustive evaluation of the defining laws;
//! a failing law yields the lexicographically least refuting assignment
//! (variables range over elements in file order).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::poset::StructuredPoset;
use crate::subset::Subset;
use crate::witness::{pairs, triples, Verdict, Witness};

/// The two displayed identities of a class definition, checked separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityPair {
    pub first: Verdict,
    pub second: Verdict,
}

impl IdentityPair {
    pub fn holds(&self) -> bool {
        self.first.holds
    }

    pub fn agree(&self) -> bool {
        self.first.holds == self.second.holds
    }
}

/// Membership in a class of posets with complementation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassVerdict {
    pub complementation: Verdict,
    pub identities: IdentityPair,
}

impl ClassVerdict {
    pub fn holds(&self) -> bool {
        self.complementation.holds && self.identities.holds()
    }

    /// Combined verdict, reporting the complementation witness first.
    pub fn verdict(&self) -> Verdict {
        self.complementation.clone().and(self.identities.first.clone())
    }
}

fn pair(x: usize, y: usize) -> Subset {
    Subset::single(x).with(y)
}

/// Definition of a poset with complementation: `L(x,x') = {0}`,
/// `U(x,x') = {1}`, antitone, involutive.
pub fn is_complementation(sp: &StructuredPoset) -> Result<Verdict> {
    let p = &sp.poset;
    let (bot, top) = p.bounds()?;
    let n = p.len();
    for x in 0..n {
        let xs = pair(x, sp.prime(x));
        let l = p.lower(xs);
        if l != Subset::single(bot) {
            return Ok(Verdict::fail(
                Witness::new("L(x,x')={0}").elem("x", x).side("L(x,x')", l).side("{0}", Subset::single(bot)),
            ));
        }
        let u = p.upper(xs);
        if u != Subset::single(top) {
            return Ok(Verdict::fail(
                Witness::new("U(x,x')={1}").elem("x", x).side("U(x,x')", u).side("{1}", Subset::single(top)),
            ));
        }
    }
    let antitone = antitone_witness(sp);
    if let Some(w) = antitone {
        return Ok(Verdict::fail(w));
    }
    Ok(Verdict::from_search(involution_witness(sp)))
}

fn antitone_witness(sp: &StructuredPoset) -> Option<Witness> {
    let p = &sp.poset;
    pairs(p.len(), |x, y| {
        let (xp, yp) = (sp.prime(x), sp.prime(y));
        (p.leq(x, y) && !p.leq(yp, xp)).then(|| {
            Witness::new("antitone").elem("x", x).elem("y", y).side("L(y')", p.down(yp)).side("L(x')", p.down(xp))
        })
    })
}

fn involution_witness(sp: &StructuredPoset) -> Option<Witness> {
    let p = &sp.poset;
    (0..p.len()).find(|&x| sp.prime(sp.prime(x)) != x).map(|x| {
        Witness::new("involution").elem("x", x).side("L(x'')", p.down(sp.prime(sp.prime(x)))).side("L(x)", p.down(x))
    })
}

pub fn is_antitone(sp: &StructuredPoset) -> Verdict {
    Verdict::from_search(antitone_witness(sp))
}

pub fn is_involution(sp: &StructuredPoset) -> Verdict {
    Verdict::from_search(involution_witness(sp))
}

/// `1' = 0`.
pub fn top_to_bottom(sp: &StructuredPoset) -> Result<Verdict> {
    let (bot, top) = sp.poset.bounds()?;
    let img = sp.prime(top);
    Ok(if img == bot {
        Verdict::pass()
    } else {
        Verdict::fail(
            Witness::new("1'=0").elem("x", top).side("L(1')", sp.poset.down(img)).side("L(0)", sp.poset.down(bot)),
        )
    })
}

/// Cone-level distributivity, both displayed forms.
pub fn is_distributive(p: &Poset) -> IdentityPair {
    let n = p.len();
    let first = triples(n, |x, y, z| {
        let lhs = p.lower(p.upper(pair(x, y)).with(z));
        let rhs = p.lower(p.upper(p.lower(pair(x, z)) | p.lower(pair(y, z))));
        (lhs != rhs).then(|| triple_witness("L(U(x,y),z)=L(U(L(x,z),L(y,z)))", [x, y, z], lhs, rhs))
    });
    let second = triples(n, |x, y, z| {
        let lhs = p.upper(p.lower(pair(x, y)).with(z));
        let rhs = p.upper(p.lower(p.upper(pair(x, z)) | p.upper(pair(y, z))));
        (lhs != rhs).then(|| triple_witness("U(L(x,y),z)=U(L(U(x,z),U(y,z)))", [x, y, z], lhs, rhs))
    });
    IdentityPair { first: Verdict::from_search(first), second: Verdict::from_search(second) }
}

fn triple_witness(clause: &'static str, [x, y, z]: [usize; 3], lhs: Subset, rhs: Subset) -> Witness {
    Witness::new(clause).elem("x", x).elem("y", y).elem("z", z).side("lhs", lhs).side("rhs", rhs)
}

fn pair_witness(clause: &'static str, x: usize, y: usize, lhs: Subset, rhs: Subset) -> Witness {
    Witness::new(clause).elem("x", x).elem("y", y).side("lhs", lhs).side("rhs", rhs)
}

fn pair_identity<F>(sp: &StructuredPoset, clause: &'static str, eval: F) -> Verdict
where
    F: Fn(usize, usize, usize) -> (Subset, Subset),
{
    let n = sp.len();
    Verdict::from_search(pairs(n, |x, y| {
        let (lhs, rhs) = eval(x, y, sp.prime(y));
        (lhs != rhs).then(|| pair_witness(clause, x, y, lhs, rhs))
    }))
}

fn pseudo_boolean_identities(sp: &StructuredPoset) -> IdentityPair {
    let p = &sp.poset;
    let first = pair_identity(sp, "L(U(x,y),y')=L(x,y')", |x, y, yp| {
        (p.lower(p.upper(pair(x, y)).with(yp)), p.lower(pair(x, yp)))
    });
    let second = pair_identity(sp, "U(L(x,y),y')=U(x,y')", |x, y, yp| {
        (p.upper(p.lower(pair(x, y)).with(yp)), p.upper(pair(x, yp)))
    });
    IdentityPair { first, second }
}

fn pseudo_orthomodular_identities(sp: &StructuredPoset) -> IdentityPair {
    let p = &sp.poset;
    let first = pair_identity(sp, "L(U(L(x,y),y'),y)=L(x,y)", |x, y, yp| {
        (p.lower(p.upper(p.lower(pair(x, y)).with(yp)).with(y)), p.lower(pair(x, y)))
    });
    let second = pair_identity(sp, "U(L(U(x,y),y'),y)=U(x,y)", |x, y, yp| {
        (p.upper(p.lower(p.upper(pair(x, y)).with(yp)).with(y)), p.upper(pair(x, y)))
    });
    IdentityPair { first, second }
}

/// Boolean poset: complementation and distributivity.
pub fn is_boolean_poset(sp: &StructuredPoset) -> Result<ClassVerdict> {
    Ok(ClassVerdict { complementation: is_complementation(sp)?, identities: is_distributive(&sp.poset) })
}

pub fn is_pseudo_boolean(sp: &StructuredPoset) -> Result<ClassVerdict> {
    Ok(ClassVerdict { complementation: is_complementation(sp)?, identities: pseudo_boolean_identities(sp) })
}

pub fn is_pseudo_orthomodular(sp: &StructuredPoset) -> Result<ClassVerdict> {
    Ok(ClassVerdict { complementation: is_complementation(sp)?, identities: pseudo_orthomodular_identities(sp) })
}

/// Every pair has a join and a meet.
pub fn is_lattice(p: &Poset) -> Verdict {
    Verdict::from_search(pairs(p.len(), |x, y| {
        let ub = p.upper(pair(x, y));
        if p.least(ub).is_none() {
            return Some(Witness::new("join").elem("x", x).elem("y", y).side("U(x,y)", ub));
        }
        let lb = p.lower(pair(x, y));
        p.greatest(lb).is_none().then(|| Witness::new("meet").elem("x", x).elem("y", y).side("L(x,y)", lb))
    }))
}

/// Lattice with complementation satisfying `x <= y => x = y ∧ (x ∨ y')`.
pub fn is_orthomodular_lattice(sp: &StructuredPoset) -> Result<Verdict> {
    let p = &sp.poset;
    let lattice = is_lattice(p);
    if !lattice.holds {
        return Ok(lattice.with_reason("NotALattice"));
    }
    let comp = is_complementation(sp)?;
    if !comp.holds {
        return Ok(comp.with_reason("NotComplemented"));
    }
    Ok(Verdict::from_search(pairs(p.len(), |x, y| {
        if !p.leq(x, y) {
            return None;
        }
        let j = p.join(x, sp.prime(y)).expect("lattice");
        let m = p.meet(y, j).expect("lattice");
        (m != x).then(|| {
            Witness::new("x<=y => x=y∧(x∨y')")
                .elem("x", x)
                .elem("y", y)
                .side("L(x)", p.down(x))
                .side("L(y∧(x∨y'))", p.down(m))
        })
    })))
}

/// Sufficient conditions for operator residuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// `L(x) ⊆ L(U(L(U(x,y'),y),y'))`
    One,
    /// `L(U(L(x,y),y'),y) ⊆ L(x)`
    Two,
    /// `L(x) ⊆ L(U(L(x,y),y'))`
    Seven,
    /// `L(U(x,y'),y) ⊆ L(x)`
    Eight,
}

impl Condition {
    pub const ALL: [Condition; 4] = [Condition::One, Condition::Two, Condition::Seven, Condition::Eight];

    pub fn number(self) -> u8 {
        match self {
            Condition::One => 1,
            Condition::Two => 2,
            Condition::Seven => 7,
            Condition::Eight => 8,
        }
    }

    pub fn from_number(n: u8) -> Option<Condition> {
        Condition::ALL.into_iter().find(|c| c.number() == n)
    }

    pub fn formula(self) -> &'static str {
        match self {
            Condition::One => "L(x)⊆L(U(L(U(x,y'),y),y'))",
            Condition::Two => "L(U(L(x,y),y'),y)⊆L(x)",
            Condition::Seven => "L(x)⊆L(U(L(x,y),y'))",
            Condition::Eight => "L(U(x,y'),y)⊆L(x)",
        }
    }

    /// Both sides of the inclusion at `(x, y)`.
    pub fn sides(self, sp: &StructuredPoset, x: usize, y: usize) -> (Subset, Subset) {
        let p = &sp.poset;
        let yp = sp.prime(y);
        match self {
            Condition::One => {
                let inner = p.lower(p.upper(pair(x, yp)).with(y));
                (p.down(x), p.lower(p.upper(inner.with(yp))))
            }
            Condition::Two => (p.lower(p.upper(p.lower(pair(x, y)).with(yp)).with(y)), p.down(x)),
            Condition::Seven => (p.down(x), p.lower(p.upper(p.lower(pair(x, y)).with(yp)))),
            Condition::Eight => (p.lower(p.upper(pair(x, yp)).with(y)), p.down(x)),
        }
    }
}

pub fn check_condition(sp: &StructuredPoset, which: Condition) -> Verdict {
    Verdict::from_search(pairs(sp.len(), |x, y| {
        let (lhs, rhs) = which.sides(sp, x, y);
        (!lhs.is_subset(rhs)).then(|| pair_witness(which.formula(), x, y, lhs, rhs))
    }))
}

/// Every predicate of the classification, evaluated on one structure.
#[derive(Debug)]
pub struct ClassReport {
    pub complementation: Result<Verdict>,
    pub distributive: IdentityPair,
    pub boolean: Result<ClassVerdict>,
    pub pseudo_boolean: Result<ClassVerdict>,
    pub pseudo_orthomodular: Result<ClassVerdict>,
    pub lattice: Verdict,
    pub orthomodular_lattice: Result<Verdict>,
    pub conditions: Vec<(Condition, Verdict)>,
    pub top_to_bottom: Result<Verdict>,
}

impl ClassReport {
    /// Identity-pair agreement and the Boolean ⟹ pseudo-Boolean ⟹
    /// pseudo-orthomodular chain.
    pub fn consistent(&self) -> bool {
        let agree = |c: &Result<ClassVerdict>| c.as_ref().map_or(true, |c| c.identities.agree());
        let holds = |c: &Result<ClassVerdict>| c.as_ref().is_ok_and(ClassVerdict::holds);
        self.distributive.agree()
            && agree(&self.pseudo_boolean)
            && agree(&self.pseudo_orthomodular)
            && (!holds(&self.boolean) || holds(&self.pseudo_boolean))
            && (!holds(&self.pseudo_boolean) || holds(&self.pseudo_orthomodular))
    }
}

pub fn classify(sp: &StructuredPoset) -> ClassReport {
    ClassReport {
        complementation: is_complementation(sp),
        distributive: is_distributive(&sp.poset),
        boolean: is_boolean_poset(sp),
        pseudo_boolean: is_pseudo_boolean(sp),
        pseudo_orthomodular: is_pseudo_orthomodular(sp),
        lattice: is_lattice(&sp.poset),
        orthomodular_lattice: is_orthomodular_lattice(sp),
        conditions: Condition::ALL.iter().map(|&c| (c, check_condition(sp, c))).collect(),
        top_to_bottom: top_to_bottom(sp),
    }
}

/// Named predicates usable as enumeration filters and in claims.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Predicate {
    Complementation,
    Antitone,
    Involution,
    AntitoneInvolution,
    TopToBottom,
    Distributive,
    Boolean,
    PseudoBoolean,
    PseudoOrthomodular,
    Lattice,
    OrthomodularLattice,
    Cond(Condition),
}

impl Predicate {
    pub fn evaluate(self, sp: &StructuredPoset) -> bool {
        let ok = |r: Result<Verdict>| r.is_ok_and(|v| v.holds);
        let class = |r: Result<ClassVerdict>| r.is_ok_and(|v| v.holds());
        match self {
            Predicate::Complementation => ok(is_complementation(sp)),
            Predicate::Antitone => is_antitone(sp).holds,
            Predicate::Involution => is_involution(sp).holds,
            Predicate::AntitoneInvolution => is_involution(sp).holds && is_antitone(sp).holds,
            Predicate::TopToBottom => ok(top_to_bottom(sp)),
            Predicate::Distributive => is_distributive(&sp.poset).holds(),
            Predicate::Boolean => class(is_boolean_poset(sp)),
            Predicate::PseudoBoolean => class(is_pseudo_boolean(sp)),
            Predicate::PseudoOrthomodular => class(is_pseudo_orthomodular(sp)),
            Predicate::Lattice => is_lattice(&sp.poset).holds,
            Predicate::OrthomodularLattice => ok(is_orthomodular_lattice(sp)),
            Predicate::Cond(c) => check_condition(sp, c).holds,
        }
    }

    /// Whether the predicate forces `'` to be an involution.
    pub fn implies_involution(self) -> bool {
        matches!(
            self,
            Predicate::Complementation
                | Predicate::Involution
                | Predicate::AntitoneInvolution
                | Predicate::Boolean
                | Predicate::PseudoBoolean
                | Predicate::PseudoOrthomodular
                | Predicate::OrthomodularLattice
        )
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Predicate::Complementation => "complementation",
            Predicate::Antitone => "antitone",
            Predicate::Involution => "involution",
            Predicate::AntitoneInvolution => "antitone-involution",
            Predicate::TopToBottom => "top-to-bottom",
            Predicate::Distributive => "distributive",
            Predicate::Boolean => "boolean",
            Predicate::PseudoBoolean => "pseudo-boolean",
            Predicate::PseudoOrthomodular => "pseudo-orthomodular",
            Predicate::Lattice => "lattice",
            Predicate::OrthomodularLattice => "orthomodular-lattice",
            Predicate::Cond(c) => return write!(f, "cond{}", c.number()),
        };
        f.write_str(s)
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let p = match s.trim() {
            "complementation" | "complemented" => Predicate::Complementation,
            "antitone" => Predicate::Antitone,
            "involution" => Predicate::Involution,
            "antitone-involution" => Predicate::AntitoneInvolution,
            "top-to-bottom" | "1'=0" => Predicate::TopToBottom,
            "distributive" => Predicate::Distributive,
            "boolean" => Predicate::Boolean,
            "pseudo-boolean" => Predicate::PseudoBoolean,
            "pseudo-orthomodular" => Predicate::PseudoOrthomodular,
            "lattice" => Predicate::Lattice,
            "orthomodular-lattice" => Predicate::OrthomodularLattice,
            other => {
                let cond =
                    other.strip_prefix("cond").and_then(|n| n.parse::<u8>().ok()).and_then(Condition::from_number);
                match cond {
                    Some(c) => Predicate::Cond(c),
                    None => return Err(Error::UnknownPredicate(other.to_string())),
                }
            }
        };
        Ok(p)
    }
}

/// An implication between conjunctions of predicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub premise: Vec<Predicate>,
    pub conclusion: Predicate,
}

impl Claim {
    pub fn holds_on(&self, sp: &StructuredPoset) -> bool {
        !self.premise.iter().all(|p| p.evaluate(sp)) || self.conclusion.evaluate(sp)
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prem: Vec<String> = self.premise.iter().map(Predicate::to_string).collect();
        write!(f, "{}=>{}", prem.join("+"), self.conclusion)
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (lhs, rhs) =
            s.split_once("=>").or_else(|| s.split_once('⟹')).ok_or_else(|| Error::MalformedClaim(s.to_string()))?;
        let premise = lhs.split('+').filter(|t| !t.trim().is_empty()).map(str::parse).collect::<Result<Vec<_>>>()?;
        Ok(Claim { premise, conclusion: rhs.parse()? })
    }
}
