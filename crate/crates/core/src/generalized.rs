//! Subset-level operators `M(A,B) = L(A,B)` and `R(A,B) = L(U(B,A'))`
//! and the conditions relating them.
//!
//! Subsets are enumerated as bitmasks in increasing numeric order, so the
//! reported witness is the least failing tuple in that order with the
//! first variable most significant.

use std::fmt;
use std::str::FromStr;

use crate::classify::{check_condition, Condition};
use crate::error::{Error, Result};
use crate::poset::StructuredPoset;
use crate::residuation::{build_operators, verify_axioms, Scheme};
use crate::subset::Subset;
use crate::witness::{first_failure, Verdict, Witness};

pub const DEFAULT_PAIR_CAP: usize = 20;
pub const DEFAULT_TRIPLE_CAP: usize = 8;

/// Limits on carrier size for pair (`4^n`) and triple (`8^n`) enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub pair: usize,
    pub triple: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { pair: DEFAULT_PAIR_CAP, triple: DEFAULT_TRIPLE_CAP }
    }
}

/// Which subsets the variables `A`, `B`, `C` range over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Domain {
    /// Every subset including the empty one.
    All,
    /// Non-empty subsets only.
    #[default]
    NonEmpty,
}

impl Domain {
    fn start(self) -> usize {
        match self {
            Domain::All => 0,
            Domain::NonEmpty => 1,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::All => "all",
            Domain::NonEmpty => "nonempty",
        })
    }
}

impl FromStr for Domain {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all" => Ok(Domain::All),
            "nonempty" => Ok(Domain::NonEmpty),
            _ => Err(format!("unknown subset domain `{s}` (expected all or nonempty)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `M(A,B) ⊆ L(C) ⟹ L(A) ⊆ R(B,C)`
    Fifteen,
    /// `L(A) ⊆ R(B,C) ⟹ M(A,B) ⊆ L(C)`
    Sixteen,
}

impl Direction {
    pub fn number(self) -> u8 {
        match self {
            Direction::Fifteen => 15,
            Direction::Sixteen => 16,
        }
    }

    fn formula(self) -> &'static str {
        match self {
            Direction::Fifteen => "M(A,B)⊆L(C) ⟹ L(A)⊆R(B,C)",
            Direction::Sixteen => "L(A)⊆R(B,C) ⟹ M(A,B)⊆L(C)",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Direct,
    Reduction,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::Reduction => "reduction",
        })
    }
}

/// `L`, `U` and `'` tabulated for every subset of the carrier.
pub struct SubsetOperatorTable {
    n: usize,
    lower: Vec<Subset>,
    upper: Vec<Subset>,
    prime: Vec<Subset>,
}

impl SubsetOperatorTable {
    /// Fails with [`Error::CarrierTooLarge`] beyond `cap` elements.
    pub fn new(sp: &StructuredPoset, cap: usize) -> Result<Self> {
        let p = &sp.poset;
        let n = p.len();
        if n > cap {
            return Err(Error::CarrierTooLarge { size: n, cap });
        }
        let size = 1usize << n;
        let mut lower = vec![p.all(); size];
        let mut upper = vec![p.all(); size];
        let mut prime = vec![Subset::EMPTY; size];
        for mask in 1..size {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            lower[mask] = lower[rest] & p.down(low);
            upper[mask] = upper[rest] & p.up(low);
            prime[mask] = prime[rest].with(sp.prime(low));
        }
        Ok(SubsetOperatorTable { n, lower, upper, prime })
    }

    pub fn carrier_len(&self) -> usize {
        self.n
    }

    pub fn lower(&self, a: Subset) -> Subset {
        self.lower[a.bits() as usize]
    }

    pub fn upper(&self, a: Subset) -> Subset {
        self.upper[a.bits() as usize]
    }

    pub fn prime(&self, a: Subset) -> Subset {
        self.prime[a.bits() as usize]
    }

    /// `M(A,B) = L(A ∪ B)`
    pub fn m(&self, a: Subset, b: Subset) -> Subset {
        self.lower(a | b)
    }

    /// `R(A,B) = L(U(B ∪ A'))`
    pub fn r(&self, a: Subset, b: Subset) -> Subset {
        self.lower(self.upper(b | self.prime(a)))
    }

    /// Both sides of `L(A) ⊆ L(U(L(A,B),B'))`.
    pub fn cond11_sides(&self, a: Subset, b: Subset) -> (Subset, Subset) {
        (self.lower(a), self.lower(self.upper(self.lower(a | b) | self.prime(b))))
    }

    /// Both sides of `L(U(A,B'),B) ⊆ L(A)`.
    pub fn cond12_sides(&self, a: Subset, b: Subset) -> (Subset, Subset) {
        (self.lower(self.upper(a | self.prime(b)) | b), self.lower(a))
    }

    /// Refutation of the given direction at `(A,B,C)`, if any.
    pub fn adjoint_at(&self, dir: Direction, a: Subset, b: Subset, c: Subset) -> Option<Witness> {
        let (m, lc, la, r) = (self.m(a, b), self.lower(c), self.lower(a), self.r(b, c));
        let fails = match dir {
            Direction::Fifteen => m.is_subset(lc) && !la.is_subset(r),
            Direction::Sixteen => la.is_subset(r) && !m.is_subset(lc),
        };
        fails.then(|| {
            Witness::new(dir.formula())
                .set("A", a)
                .set("B", b)
                .set("C", c)
                .side("M(A,B)", m)
                .side("L(C)", lc)
                .side("L(A)", la)
                .side("R(B,C)", r)
        })
    }

    /// `C` with no proper subset of the same lower cone.
    fn is_lower_minimal(&self, c: Subset) -> bool {
        let lc = self.lower(c);
        c.iter().all(|i| self.lower(c.without(i)) != lc)
    }

    /// `C = U(L(C))`, the largest set with its lower cone.
    fn is_lower_maximal(&self, c: Subset) -> bool {
        self.upper(self.lower(c)) == c
    }

    fn masks(&self, domain: Domain) -> impl Iterator<Item = Subset> + Clone {
        (domain.start() as u64..1u64 << self.n).map(Subset::from_bits)
    }
}

fn pair_search<F>(t: &SubsetOperatorTable, domain: Domain, check: F) -> Option<Witness>
where
    F: Fn(Subset, Subset) -> Option<Witness> + Sync + Send,
{
    let start = domain.start();
    let count = (1usize << t.n) - start;
    first_failure(count, |i| {
        let a = Subset::from_bits((i + start) as u64);
        t.masks(domain).find_map(|b| check(a, b))
    })
}

fn cond11(t: &SubsetOperatorTable, domain: Domain) -> Verdict {
    Verdict::from_search(pair_search(t, domain, |a, b| {
        let (lhs, rhs) = t.cond11_sides(a, b);
        (!lhs.is_subset(rhs))
            .then(|| Witness::new("L(A)⊆L(U(L(A,B),B'))").set("A", a).set("B", b).side("lhs", lhs).side("rhs", rhs))
    }))
}

fn cond12(t: &SubsetOperatorTable, domain: Domain) -> Verdict {
    Verdict::from_search(pair_search(t, domain, |a, b| {
        let (lhs, rhs) = t.cond12_sides(a, b);
        (!lhs.is_subset(rhs))
            .then(|| Witness::new("L(U(A,B'),B)⊆L(A)").set("A", a).set("B", b).side("lhs", lhs).side("rhs", rhs))
    }))
}

/// `L(A) ⊆ L(U(L(A,B),B'))` for all `A`, `B` in the domain.
pub fn check_condition_11(sp: &StructuredPoset, domain: Domain, caps: Caps) -> Result<Verdict> {
    Ok(cond11(&SubsetOperatorTable::new(sp, caps.pair)?, domain))
}

/// `L(U(A,B'),B) ⊆ L(A)` for all `A`, `B` in the domain.
pub fn check_condition_12(sp: &StructuredPoset, domain: Domain, caps: Caps) -> Result<Verdict> {
    Ok(cond12(&SubsetOperatorTable::new(sp, caps.pair)?, domain))
}

/// Direct enumeration of all triples `(A,B,C)`.
///
/// With `prune`, `C` is restricted to sets that are extremal among those
/// with the same lower cone: minimal ones for (15), where shrinking `C`
/// only strengthens the failure, and maximal ones for (16).
pub fn check_generalized_adjointness(
    sp: &StructuredPoset,
    dir: Direction,
    domain: Domain,
    caps: Caps,
    prune: bool,
) -> Result<Verdict> {
    let n = sp.len();
    if n > caps.triple {
        return Err(Error::TripleCapExceeded { size: n, cap: caps.triple });
    }
    let t = SubsetOperatorTable::new(sp, n)?;
    Ok(adjointness_direct(&t, dir, domain, prune))
}

fn adjointness_direct(t: &SubsetOperatorTable, dir: Direction, domain: Domain, prune: bool) -> Verdict {
    let cs: Vec<Subset> = t
        .masks(domain)
        .filter(|&c| {
            !prune
                || match dir {
                    Direction::Fifteen => t.is_lower_minimal(c),
                    Direction::Sixteen => t.is_lower_maximal(c),
                }
        })
        .collect();
    Verdict::from_search(pair_search(t, domain, |a, b| cs.iter().find_map(|&c| t.adjoint_at(dir, a, b, c))))
}

/// Verdicts for (15) and (16) and how they were obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjointnessReport {
    pub method: Method,
    pub fifteen: Verdict,
    pub sixteen: Verdict,
}

/// Decides (15) through (11) and (16) through (12): pair enumeration
/// instead of triple enumeration.
pub fn reduction_adjointness(sp: &StructuredPoset, domain: Domain, caps: Caps) -> Result<AdjointnessReport> {
    let t = SubsetOperatorTable::new(sp, caps.pair)?;
    Ok(AdjointnessReport { method: Method::Reduction, fifteen: cond11(&t, domain), sixteen: cond12(&t, domain) })
}

pub fn direct_adjointness(sp: &StructuredPoset, domain: Domain, caps: Caps) -> Result<AdjointnessReport> {
    Ok(AdjointnessReport {
        method: Method::Direct,
        fifteen: check_generalized_adjointness(sp, Direction::Fifteen, domain, caps, true)?,
        sixteen: check_generalized_adjointness(sp, Direction::Sixteen, domain, caps, true)?,
    })
}

/// Generalized operator residuation against conditions (11) and (12).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedReport {
    /// `M({x},{1}) = M({1},{x}) = L(x)`
    pub unit: Verdict,
    /// `R({x},{0}) = L(x')`
    pub zero: Verdict,
    /// `M(A,B) = M(B,A)`
    pub commutative: Verdict,
    pub adjointness: AdjointnessReport,
    pub cond11: Verdict,
    pub cond12: Verdict,
}

impl GeneralizedReport {
    pub fn generalized_residuated(&self) -> bool {
        self.unit.holds
            && self.zero.holds
            && self.commutative.holds
            && self.adjointness.fifteen.holds
            && self.adjointness.sixteen.holds
    }

    pub fn conditions_hold(&self) -> bool {
        self.cond11.holds && self.cond12.holds
    }

    pub fn biconditional_holds(&self) -> bool {
        self.generalized_residuated() == self.conditions_hold()
    }
}

pub fn verify_generalized(
    sp: &StructuredPoset,
    method: Method,
    domain: Domain,
    caps: Caps,
) -> Result<GeneralizedReport> {
    let p = &sp.poset;
    let (bot, top) = p.bounds()?;
    let t = SubsetOperatorTable::new(sp, caps.pair)?;
    let (one, zero_set) = (Subset::single(top), Subset::single(bot));
    let unit = (0..p.len()).find_map(|x| {
        let (xs, lx) = (Subset::single(x), p.down(x));
        (t.m(xs, one) != lx || t.m(one, xs) != lx)
            .then(|| Witness::new("M(x,1)=M(1,x)=L(x)").elem("x", x).side("M(x,1)", t.m(xs, one)).side("L(x)", lx))
    });
    let zero = (0..p.len()).find_map(|x| {
        let (r, lxp) = (t.r(Subset::single(x), zero_set), p.down(sp.prime(x)));
        (r != lxp).then(|| Witness::new("R(x,0)=L(x')").elem("x", x).side("R(x,0)", r).side("L(x')", lxp))
    });
    let commutative = pair_search(&t, domain, |a, b| {
        (t.m(a, b) != t.m(b, a)).then(|| {
            Witness::new("M(A,B)=M(B,A)").set("A", a).set("B", b).side("M(A,B)", t.m(a, b)).side("M(B,A)", t.m(b, a))
        })
    });
    let cond11 = cond11(&t, domain);
    let cond12 = cond12(&t, domain);
    let adjointness = match method {
        Method::Reduction => AdjointnessReport { method, fifteen: cond11.clone(), sixteen: cond12.clone() },
        Method::Direct => direct_adjointness(sp, domain, caps)?,
    };
    Ok(GeneralizedReport {
        unit: Verdict::from_search(unit),
        zero: Verdict::from_search(zero),
        commutative: Verdict::from_search(commutative),
        adjointness,
        cond11,
        cond12,
    })
}

/// (11), (12), (15), (16) restricted to singleton arguments, with element
/// bindings so that witnesses line up with the element-level checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingletonRestriction {
    pub cond11: Verdict,
    pub cond12: Verdict,
    pub fifteen: Verdict,
    pub sixteen: Verdict,
}

pub fn singleton_restriction(sp: &StructuredPoset, caps: Caps) -> Result<SingletonRestriction> {
    let t = SubsetOperatorTable::new(sp, caps.pair)?;
    let n = sp.len();
    let s = Subset::single;
    let pair_check = |clause: &'static str, sides: &dyn Fn(Subset, Subset) -> (Subset, Subset)| {
        let mut found = None;
        'outer: for x in 0..n {
            for y in 0..n {
                let (lhs, rhs) = sides(s(x), s(y));
                if !lhs.is_subset(rhs) {
                    found = Some(Witness::new(clause).elem("x", x).elem("y", y).side("lhs", lhs).side("rhs", rhs));
                    break 'outer;
                }
            }
        }
        Verdict::from_search(found)
    };
    let triple_check = |dir: Direction| {
        let mut found = None;
        'outer: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if let Some(w) = t.adjoint_at(dir, s(x), s(y), s(z)) {
                        let Witness { clause, sides, .. } = w;
                        let mut w = Witness::new(clause).elem("x", x).elem("y", y).elem("z", z);
                        w.sides = sides;
                        found = Some(w);
                        break 'outer;
                    }
                }
            }
        }
        Verdict::from_search(found)
    };
    Ok(SingletonRestriction {
        cond11: pair_check("L(A)⊆L(U(L(A,B),B'))", &|a, b| t.cond11_sides(a, b)),
        cond12: pair_check("L(U(A,B'),B)⊆L(A)", &|a, b| t.cond12_sides(a, b)),
        fifteen: triple_check(Direction::Fifteen),
        sixteen: triple_check(Direction::Sixteen),
    })
}

/// Element-level verdicts the singleton restriction must reproduce:
/// conditions (7), (8) and both halves of operator left adjointness under
/// the meet scheme.
pub fn element_level_counterparts(sp: &StructuredPoset) -> Result<SingletonRestriction> {
    let t = build_operators(sp, Scheme::Meet)?;
    let d = verify_axioms(sp, &t)?;
    Ok(SingletonRestriction {
        cond11: check_condition(sp, Condition::Seven),
        cond12: check_condition(sp, Condition::Eight),
        fifteen: d.adjoint_forward,
        sixteen: d.adjoint_backward,
    })
}
