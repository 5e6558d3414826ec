use super::ideal::{t_invertible, LatIdeal};
use super::order::{QuadElem, QuadOrder};
use crate::error::{Error, Result};
use crate::verdict::Verdict;
use serde::Serialize;

/// Outcome of the bounded conductor search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AssWitness {
    /// `(aD :_D bD) = P`.
    Equal(QuadElem, QuadElem),
    /// `(aD :_D bD) ⊆ P`, so `P` is minimal over it.
    MinimalOver(QuadElem, QuadElem),
    NoneFound,
}

fn ord(k: i64) -> i64 {
    match k {
        0 => 0,
        k if k > 0 => 2 * k - 1,
        k => -2 * k,
    }
}

/// Elements `x + yω` with `|x| + |y| ≤ bound`, sorted by `(height, y, x)`.
fn candidates(bound: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for x in -bound..=bound {
        let r = bound - x.abs();
        for y in -r..=r {
            if (x, y) != (0, 0) {
                out.push((x.abs() + y.abs(), x, y));
            }
        }
    }
    out.sort_by_key(|&(h, x, y)| (h, ord(y), ord(x)));
    out
}

/// `(aD :_D bD) = (a/b)D ∩ D`.
pub fn lat_conductor(a: &QuadElem, b: &QuadElem) -> Result<LatIdeal> {
    let d = LatIdeal::unit(a.order);
    if a.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if b.is_zero() {
        return Ok(d);
    }
    LatIdeal::principal(&a.div(b)?)?.intersect(&d)
}

/// Searches `(a, b)` of coordinate height at most `bound` in the order
/// `(height, a, b)`; `Equal` wins over `MinimalOver` anywhere in range.
pub fn ass_wass_witness(p: &LatIdeal, bound: i64) -> Result<AssWitness> {
    p.prime_below()?;
    let o = p.order();
    let d = LatIdeal::unit(o);
    let cands = candidates(bound.max(1));
    let elem = |&(_, x, y): &(i64, i64, i64)| o.int_elem(x, y);
    let mut minimal = None;
    for level in 1..=bound.max(1) {
        for ca in cands.iter().take_while(|c| c.0 <= level) {
            let a = elem(ca);
            if !p.contains(&a) {
                continue;
            }
            let ad = LatIdeal::principal(&a)?;
            for cb in cands.iter().take_while(|c| c.0 <= level) {
                if ca.0.max(cb.0) != level {
                    continue;
                }
                let b = elem(cb);
                if ad.contains(&b) {
                    continue;
                }
                let c = LatIdeal::principal(&a.div(&b)?)?.intersect(&d)?;
                if c == *p {
                    return Ok(AssWitness::Equal(a, b));
                }
                if minimal.is_none() && p.contains_ideal(&c) {
                    minimal = Some((a.clone(), b));
                }
            }
        }
    }
    Ok(match minimal {
        Some((a, b)) => AssWitness::MinimalOver(a, b),
        None => AssWitness::NoneFound,
    })
}

pub const DEFAULT_SEARCH_BOUND: i64 = 20;

/// Predicate values for one prime, each with its witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeProfile {
    pub prime: String,
    pub order: String,
    pub residue_characteristic: u64,
    pub principal: Verdict,
    pub locally_principal: Verdict,
    pub ass: Verdict,
    pub wass: Verdict,
    pub t_ideal: Verdict,
    pub t_maximal: Verdict,
    pub t_invertible: Verdict,
    pub notes: Vec<String>,
}

impl PrimeProfile {
    /// Implications among the computed nodes that fail on this prime.
    pub fn diagram_violations(&self) -> Vec<String> {
        let rules: [(&str, &Verdict, &str, &Verdict); 6] = [
            ("principal", &self.principal, "locally principal", &self.locally_principal),
            ("principal", &self.principal, "Ass", &self.ass),
            ("Ass", &self.ass, "wAss", &self.wass),
            ("wAss", &self.wass, "t-ideal", &self.t_ideal),
            ("locally principal", &self.locally_principal, "t-ideal", &self.t_ideal),
            ("t-invertible", &self.t_invertible, "t-maximal", &self.t_maximal),
        ];
        let mut out: Vec<String> = rules
            .iter()
            .filter(|(_, a, _, b)| a.is_yes() && b.is_no())
            .map(|(na, _, nb, _)| format!("{na} holds but {nb} fails"))
            .collect();
        if self.t_invertible.is_yes() && self.t_ideal.is_yes() && self.ass.is_no() {
            out.push("t-invertible t-prime outside Ass".into());
        }
        out
    }

    pub fn is_consistent(&self) -> bool {
        self.diagram_violations().is_empty()
    }

    pub fn rows(&self) -> [(&'static str, &Verdict); 7] {
        [
            ("principal", &self.principal),
            ("locally_principal", &self.locally_principal),
            ("ass", &self.ass),
            ("wass", &self.wass),
            ("t_ideal", &self.t_ideal),
            ("t_maximal", &self.t_maximal),
            ("t_invertible", &self.t_invertible),
        ]
    }
}

fn show(x: &QuadElem) -> String {
    x.to_string()
}

pub fn prime_profile(p: &LatIdeal) -> Result<PrimeProfile> {
    prime_profile_bounded(p, DEFAULT_SEARCH_BOUND)
}

pub fn prime_profile_bounded(p: &LatIdeal, bound: i64) -> Result<PrimeProfile> {
    let res = p.prime_below()?;
    let inv = p.inverse()?;
    let pp = p.mul(&inv)?;
    let locally_principal = if pp.is_unit_ideal() {
        Verdict::yes().with_witness(format!("P·P⁻¹ = D with P⁻¹ = {inv}"))
    } else {
        Verdict::no(format!("P·P⁻¹ = {pp}"))
    };
    let (ass, wass) = match ass_wass_witness(p, bound)? {
        AssWitness::Equal(a, b) => {
            let w = format!("(({}) :_D ({})) = P", show(&a), show(&b));
            (Verdict::yes().with_witness(w.clone()), Verdict::yes().with_witness(w))
        }
        AssWitness::MinimalOver(a, b) => (
            Verdict::unknown(format!("no conductor equal to P at height {bound}")),
            Verdict::yes().with_witness(format!("P ⊇ (({}) :_D ({}))", show(&a), show(&b))),
        ),
        AssWitness::NoneFound => {
            let r = format!("no conductor inside P at height {bound}");
            (Verdict::unknown(r.clone()), Verdict::unknown(r))
        }
    };
    let pv = p.v_closure()?;
    let t_ideal = if pv == *p {
        Verdict::yes().with_witness("P_v = P")
    } else {
        Verdict::no(format!("P_v = {pv}"))
    };
    // every nonzero prime is maximal here, so a proper t-ideal is t-maximal
    let t_maximal = if t_ideal.is_yes() {
        Verdict::yes().with_witness("maximal and a t-ideal")
    } else {
        Verdict::no("not a t-ideal")
    };
    let (t_invertible, _) = t_invertible(p)?;
    Ok(PrimeProfile {
        prime: p.describe(),
        order: p.order().describe(),
        residue_characteristic: res,
        principal: p.principal_generator(),
        locally_principal,
        ass,
        wass,
        t_ideal,
        t_maximal,
        t_invertible,
        notes: vec![
            "dimension one: P is minimal over a conductor C iff C ⊆ P".into(),
            "strong Krull node omitted: no finite decision procedure".into(),
        ],
    })
}

/// Profiles of every prime of norm at most `bound`.
pub fn profile_primes(order: QuadOrder, bound: u64) -> Result<Vec<PrimeProfile>> {
    super::ideal::primes_up_to_norm(order, bound)?
        .iter()
        .map(prime_profile)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Outcome;

    fn z3() -> QuadOrder {
        QuadOrder::sqrt(-3).unwrap()
    }

    #[test]
    fn conductor_prime_profile() {
        let o = z3();
        let p = LatIdeal::from_generators(o, &[o.int_elem(2, 0), o.int_elem(1, 1)]).unwrap();
        match ass_wass_witness(&p, 4).unwrap() {
            AssWitness::Equal(a, b) => {
                assert_eq!(a, o.int_elem(2, 0));
                assert_eq!(b, o.int_elem(1, 1));
            }
            other => panic!("{other:?}"),
        }
        let pr = prime_profile(&p).unwrap();
        let got: Vec<Outcome> = pr.rows().iter().map(|(_, v)| v.outcome).collect();
        use Outcome::*;
        assert_eq!(got, vec![No, No, Yes, Yes, Yes, Yes, No]);
        assert!(pr.is_consistent());
    }

    #[test]
    fn principal_and_dedekind_primes() {
        let o = z3();
        let r = LatIdeal::principal(&o.int_elem(0, 1)).unwrap();
        let pr = prime_profile(&r).unwrap();
        assert!(pr.rows().iter().all(|(_, v)| v.is_yes()), "{pr:?}");
        let zi = QuadOrder::sqrt(-1).unwrap();
        let q = LatIdeal::principal(&zi.int_elem(1, 1)).unwrap();
        let pr = prime_profile(&q).unwrap();
        assert!(pr.rows().iter().all(|(_, v)| v.is_yes()), "{pr:?}");
    }

    #[test]
    fn inert_prime_is_a_conductor() {
        let o = z3();
        let five = LatIdeal::principal(&o.int_elem(5, 0)).unwrap();
        assert!(matches!(ass_wass_witness(&five, 20).unwrap(), AssWitness::Equal(..)));
        let c = lat_conductor(&o.int_elem(25, 0), &o.int_elem(5, 0)).unwrap();
        assert_eq!(c, five);
    }

    #[test]
    fn not_prime_rejected() {
        let o = z3();
        let six = LatIdeal::principal(&o.int_elem(6, 0)).unwrap();
        assert!(matches!(prime_profile(&six), Err(Error::NotPrime(_))));
    }
}
