//! Upper bounds on the Milnor degree from quantum `p`-orders.
//!
//! Only the arithmetic is encoded here: the bound
//! `μ <= (b_p + ô_p) / (b_p - ô_p)`, how `b_p` and `ô_p` evolve under Bing
//! doubling of the Hopf link, and how they add up over connected sums. No
//! quantum invariant is ever evaluated.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QBoundError {
    #[error("p = {p} must be a prime greater than 3")]
    BadPrime { p: u64 },
    #[error("negative p-order {o_hat}")]
    NegativeOrder { o_hat: BigRational },
    #[error("bound is vacuous: b_p = {b_p} does not exceed o_hat = {o_hat}")]
    VacuousBound { b_p: u64, o_hat: BigRational },
    #[error(
        "d = 1 is excluded: the two Hopf components link, so b_p = d + 1 fails \
         (M(7,7) = L(48,7) has Milnor degree 1)"
    )]
    DegreeOne,
    #[error("d must be at least 1")]
    ZeroDegree,
    #[error("expected {expected} framings (d + 1), got {got}")]
    FramingCount { expected: usize, got: usize },
    #[error("framing n_{index} = {framing} is not divisible by p = {p}")]
    FramingNotDivisible { index: usize, framing: i64, p: u64 },
}

/// Mod-`p` Betti number and rescaled quantum `p`-order of a 3-manifold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumData {
    pub p: u64,
    pub b_p: u64,
    pub o_hat: BigRational,
}

impl QuantumData {
    pub fn new(p: u64, b_p: u64, o_hat: BigRational) -> Result<Self, QBoundError> {
        if p <= 3 || !is_prime(p) {
            return Err(QBoundError::BadPrime { p });
        }
        if o_hat.is_negative() {
            return Err(QBoundError::NegativeOrder { o_hat });
        }
        Ok(QuantumData { p, b_p, o_hat })
    }

    pub fn from_integers(p: u64, b_p: u64, o_hat: u64) -> Result<Self, QBoundError> {
        QuantumData::new(p, b_p, BigRational::from_integer(BigInt::from(o_hat)))
    }
}

/// The bound `(b_p + ô_p) / (b_p - ô_p)`, exact and floored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeBound {
    pub exact: BigRational,
    pub floor: BigInt,
}

impl fmt::Display for DegreeBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact.is_integer() {
            write!(f, "degree <= {}", self.floor)
        } else {
            write!(f, "degree <= {} (= {})", self.floor, self.exact)
        }
    }
}

pub fn degree_upper_bound(d: &QuantumData) -> Result<DegreeBound, QBoundError> {
    let b = BigRational::from_integer(BigInt::from(d.b_p));
    if b <= d.o_hat {
        return Err(QBoundError::VacuousBound {
            b_p: d.b_p,
            o_hat: d.o_hat.clone(),
        });
    }
    let exact = (&b + &d.o_hat) / (&b - &d.o_hat);
    let floor = exact.floor().to_integer();
    Ok(DegreeBound { exact, floor })
}

/// `(b_p, ô_p)` for surgery on `H^d` with framings all divisible by `p`.
///
/// The components are pairwise unlinked once `d > 1`, so `b_p` is the
/// component count `d + 1`. Starting from `ô_p = 0` for `M(0,0) = S³`,
/// each of the `d - 1` Bing doublings adds one to the `p`-order.
pub fn bing_surgery_order(d: usize, framings: &[i64], p: u64) -> Result<QuantumData, QBoundError> {
    if d == 0 {
        return Err(QBoundError::ZeroDegree);
    }
    if d == 1 {
        return Err(QBoundError::DegreeOne);
    }
    if p <= 3 || !is_prime(p) {
        return Err(QBoundError::BadPrime { p });
    }
    if framings.len() != d + 1 {
        return Err(QBoundError::FramingCount {
            expected: d + 1,
            got: framings.len(),
        });
    }
    if let Some((i, &n)) = framings
        .iter()
        .enumerate()
        .find(|(_, &n)| n.rem_euclid(p as i64) != 0)
    {
        return Err(QBoundError::FramingNotDivisible {
            index: i,
            framing: n,
            p,
        });
    }
    let mut o_hat = BigRational::zero();
    for _ in 1..d {
        o_hat += BigRational::one();
    }
    QuantumData::new(p, (d + 1) as u64, o_hat)
}

/// The requested Milnor degree of a realization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetDegree {
    Finite(usize),
    Infinite,
}

/// A connected summand in a realization recipe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Summand {
    /// Surgery on `H^d` with the given framings.
    BingSurgery { framings: Vec<i64> },
    /// The lens space `L(n, q)`.
    Lens { n: u64, q: u64 },
    /// `S¹ × S²`.
    S1xS2,
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Summand::BingSurgery { framings } => {
                let fr: Vec<String> = framings.iter().map(|x| x.to_string()).collect();
                write!(f, "M({})", fr.join(","))
            }
            Summand::Lens { n, q } => write!(f, "L({n},{q})"),
            Summand::S1xS2 => f.write_str("S1xS2"),
        }
    }
}

/// A connected sum with prescribed first Betti number and Milnor degree,
/// with the `p = 5` data certifying the upper bound when the degree is
/// finite and above one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationPlan {
    pub betti: u64,
    pub target: TargetDegree,
    pub summands: Vec<Summand>,
    /// `(q, r)` with `b = q(d+1) + r`, for finite `d > 1`.
    pub division: Option<(u64, u64)>,
    pub certificate: Option<QuantumData>,
    pub bound: Option<DegreeBound>,
}

impl RealizationPlan {
    /// The summands' `ô_5` added up, when every summand's value is known.
    pub fn summed_o_hat(&self) -> Option<BigRational> {
        self.summands
            .iter()
            .map(summand_o_hat)
            .try_fold(BigRational::zero(), |a, b| Some(a + b?))
    }

    /// The summands' `b_5` added up.
    pub fn summed_b5(&self) -> u64 {
        self.summands.iter().map(summand_b5).sum()
    }
}

/// `ô_5` of a summand: `d - 1` for `M(n_0..n_d)` with `d > 1`, and one for
/// `S¹×S²` (the normalizing unit). Not tracked for lens spaces.
fn summand_o_hat(s: &Summand) -> Option<BigRational> {
    match s {
        Summand::BingSurgery { framings } => Some(BigRational::from_integer(BigInt::from(
            framings.len() as i64 - 2,
        ))),
        Summand::Lens { .. } => None,
        Summand::S1xS2 => Some(BigRational::one()),
    }
}

fn summand_b5(s: &Summand) -> u64 {
    match s {
        Summand::BingSurgery { framings } => framings.len() as u64,
        Summand::Lens { n, .. } => u64::from(n % 5 == 0),
        Summand::S1xS2 => 1,
    }
}

impl fmt::Display for RealizationPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let target = match self.target {
            TargetDegree::Finite(d) => d.to_string(),
            TargetDegree::Infinite => "infinite".to_string(),
        };
        writeln!(f, "betti = {}, degree = {}", self.betti, target)?;
        if let Some((q, r)) = self.division {
            writeln!(f, "split b = q(d+1) + r with q = {q}, r = {r}")?;
        }
        let parts: Vec<String> = self.summands.iter().map(|s| s.to_string()).collect();
        writeln!(
            f,
            "manifold = {}",
            if parts.is_empty() {
                "S3".to_string()
            } else {
                parts.join(" # ")
            }
        )?;
        if let (Some(c), Some(b)) = (&self.certificate, &self.bound) {
            writeln!(f, "b_{} = {}, o_hat = {}, {}", c.p, c.b_p, c.o_hat, b)?;
        }
        Ok(())
    }
}

/// A 3-manifold with first Betti number `b` and the requested Milnor degree.
///
/// For finite `d > 1`: `b = q(d+1) + r`, then `q` copies of `M(0,..,0)` on
/// `H^d` and one `M(0^r, 5^{d+1-r})`, certified by `b_5 = (q+1)(d+1)`,
/// `ô_5 = (q+1)(d-1)`. For `d = 1`: `L(5,2)` plus `b` copies of `S¹×S²`.
/// For infinite degree: `b` copies of `S¹×S²`.
pub fn realization_plan(b: u64, target: TargetDegree) -> Result<RealizationPlan, QBoundError> {
    let s1s2 = || std::iter::repeat_n(Summand::S1xS2, b as usize);
    match target {
        TargetDegree::Infinite => Ok(RealizationPlan {
            betti: b,
            target,
            summands: s1s2().collect(),
            division: None,
            certificate: None,
            bound: None,
        }),
        TargetDegree::Finite(0) => Err(QBoundError::ZeroDegree),
        TargetDegree::Finite(1) => Ok(RealizationPlan {
            betti: b,
            target,
            summands: std::iter::once(Summand::Lens { n: 5, q: 2 })
                .chain(s1s2())
                .collect(),
            division: None,
            certificate: None,
            bound: None,
        }),
        TargetDegree::Finite(d) => {
            let width = d as u64 + 1;
            let (q, r) = (b / width, b % width);
            let mut summands = Vec::with_capacity(q as usize + 1);
            for _ in 0..q {
                summands.push(Summand::BingSurgery {
                    framings: vec![0; d + 1],
                });
            }
            let mut framings = vec![0i64; r as usize];
            framings.resize(d + 1, 5);
            summands.push(Summand::BingSurgery { framings });
            let certificate =
                QuantumData::from_integers(5, (q + 1) * width, (q + 1) * (d as u64 - 1))?;
            let bound = degree_upper_bound(&certificate)?;
            Ok(RealizationPlan {
                betti: b,
                target,
                summands,
                division: Some((q, r)),
                certificate: Some(certificate),
                bound: Some(bound),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn bound_examples() {
        for d in 2..=10u64 {
            let q = QuantumData::from_integers(5, d + 1, d - 1).unwrap();
            assert_eq!(degree_upper_bound(&q).unwrap().exact, rat(d as i64));
            let q = QuantumData::from_integers(7, 3 * (d + 1), 3 * (d - 1)).unwrap();
            assert_eq!(degree_upper_bound(&q).unwrap().floor, BigInt::from(d));
        }
        let q = QuantumData::from_integers(5, 1, 0).unwrap();
        assert_eq!(degree_upper_bound(&q).unwrap().exact, rat(1));
        let q = QuantumData::new(5, 3, BigRational::new(BigInt::from(1), BigInt::from(2))).unwrap();
        let b = degree_upper_bound(&q).unwrap();
        assert_eq!(
            (b.exact.clone(), b.floor.clone()),
            (BigRational::new(7.into(), 5.into()), BigInt::from(1))
        );
        assert_eq!(b.to_string(), "degree <= 1 (= 7/5)");
    }

    #[test]
    fn vacuous_and_bad_input() {
        let q = QuantumData::from_integers(5, 2, 2).unwrap();
        assert!(matches!(
            degree_upper_bound(&q),
            Err(QBoundError::VacuousBound { .. })
        ));
        assert_eq!(
            QuantumData::from_integers(3, 2, 0),
            Err(QBoundError::BadPrime { p: 3 })
        );
        assert_eq!(
            QuantumData::from_integers(9, 2, 0),
            Err(QBoundError::BadPrime { p: 9 })
        );
    }

    #[test]
    fn bing_surgery_examples() {
        let q = bing_surgery_order(2, &[5, 5, 5], 5).unwrap();
        assert_eq!((q.b_p, q.o_hat.clone()), (3, rat(1)));
        assert_eq!(degree_upper_bound(&q).unwrap().floor, BigInt::from(2));
        let q = bing_surgery_order(4, &[0; 5], 5).unwrap();
        assert_eq!((q.b_p, q.o_hat.clone()), (5, rat(3)));
        assert_eq!(degree_upper_bound(&q).unwrap().floor, BigInt::from(4));

        let err = bing_surgery_order(1, &[7, 7], 7).unwrap_err();
        assert_eq!(err, QBoundError::DegreeOne);
        assert!(err
            .to_string()
            .contains("M(7,7) = L(48,7) has Milnor degree 1"));
        assert!(matches!(
            bing_surgery_order(2, &[5, 3, 5], 5),
            Err(QBoundError::FramingNotDivisible {
                index: 1,
                framing: 3,
                p: 5
            })
        ));
        assert!(matches!(
            bing_surgery_order(2, &[5, 5], 5),
            Err(QBoundError::FramingCount { .. })
        ));
        assert!(matches!(
            bing_surgery_order(2, &[3, 3, 3], 3),
            Err(QBoundError::BadPrime { .. })
        ));
    }

    #[test]
    fn plans() {
        let p = realization_plan(0, TargetDegree::Finite(3)).unwrap();
        assert_eq!(
            p.summands,
            vec![Summand::BingSurgery {
                framings: vec![5; 4]
            }]
        );
        assert_eq!(p.bound.as_ref().unwrap().floor, BigInt::from(3));

        let p = realization_plan(7, TargetDegree::Finite(2)).unwrap();
        assert_eq!(p.division, Some((2, 1)));
        assert_eq!(p.summands.len(), 3);
        assert_eq!(
            p.summands[2],
            Summand::BingSurgery {
                framings: vec![0, 5, 5]
            }
        );
        let c = p.certificate.as_ref().unwrap();
        assert_eq!((c.b_p, c.o_hat.clone()), (9, rat(3)));
        assert_eq!(p.summed_o_hat(), Some(c.o_hat.clone()));
        assert_eq!(p.summed_b5(), c.b_p);

        let p = realization_plan(3, TargetDegree::Finite(1)).unwrap();
        assert_eq!(p.summands[0], Summand::Lens { n: 5, q: 2 });
        assert_eq!(
            p.summands[1..],
            [Summand::S1xS2, Summand::S1xS2, Summand::S1xS2]
        );
        assert_eq!(p.summed_o_hat(), None);

        let p = realization_plan(2, TargetDegree::Infinite).unwrap();
        assert_eq!(p.summands, vec![Summand::S1xS2; 2]);
    }

    #[test]
    fn plan_display() {
        let p = realization_plan(7, TargetDegree::Finite(2)).unwrap();
        assert_eq!(
            p.to_string(),
            "betti = 7, degree = 2\nsplit b = q(d+1) + r with q = 2, r = 1\n\
             manifold = M(0,0,0) # M(0,0,0) # M(0,5,5)\nb_5 = 9, o_hat = 3, degree <= 2\n"
        );
    }
}
