//! Macaulay pseudopowers, M-vectors, g-constraints and palindromicity.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// `C(a, m)` saturating at `u128::MAX`.
fn binomial_sat(a: u64, m: u32) -> u128 {
    let m = u64::from(m);
    if m > a {
        return 0;
    }
    let m = m.min(a - m);
    let mut c: u128 = 1;
    for j in 0..m {
        // C(a, j+1) = C(a, j) * (a - j) / (j + 1); intermediate values grow
        // monotonically because j < a/2
        match c.checked_mul(u128::from(a - j)) {
            Some(x) => c = x / u128::from(j + 1),
            None => return u128::MAX,
        }
    }
    c
}

/// The `i`-th Macaulay representation `h = sum_m C(a_m, m)` with
/// `a_i > a_{i-1} > ... > a_j >= j >= 1`, as `(a_m, m)` pairs from `m = i`
/// downwards.
pub fn macaulay_representation(h: u64, i: u32) -> Result<Vec<(u64, u32)>> {
    if h == 0 || i == 0 {
        return Err(Error::InvalidArgument(format!(
            "Macaulay representation needs h >= 1 and i >= 1, got h = {h}, i = {i}"
        )));
    }
    let mut rest = u128::from(h);
    let mut parts = Vec::new();
    let mut m = i;
    while rest > 0 {
        assert!(m >= 1, "greedy Macaulay decomposition ran out of levels");
        // largest a with C(a, m) <= rest; C(a, m) >= a - m + 1 bounds the search
        let (mut lo, mut hi) = (u64::from(m), rest as u64 + u64::from(m) - 1);
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            if binomial_sat(mid, m) <= rest {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        rest -= binomial_sat(lo, m);
        parts.push((lo, m));
        m -= 1;
    }
    debug_assert_eq!(
        parts.iter().map(|&(a, m)| binomial_sat(a, m)).sum::<u128>(),
        u128::from(h)
    );
    Ok(parts)
}

/// `h^<i> = sum_m C(a_m + 1, m + 1)` over the Macaulay representation.
pub fn macaulay_pseudopower(h: u64, i: u32) -> Result<u128> {
    let parts = macaulay_representation(h, i)?;
    Ok(parts
        .iter()
        .map(|&(a, m)| binomial_sat(a + 1, m + 1))
        .fold(0u128, u128::saturating_add))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MVectorCheck {
    pub is_m_vector: bool,
    /// Index of the first violated condition: 0 for `v_0 != 1`, `i` for a
    /// negative `v_i`, and `i` for a failed growth bound `v_{i+1} <= v_i^<i>`.
    pub failing_index: Option<usize>,
    pub reason: Option<String>,
}

impl MVectorCheck {
    fn pass() -> Self {
        Self {
            is_m_vector: true,
            failing_index: None,
            reason: None,
        }
    }

    fn fail(index: Option<usize>, reason: String) -> Self {
        Self {
            is_m_vector: false,
            failing_index: index,
            reason: Some(reason),
        }
    }
}

pub fn is_m_vector(v: &[BigInt]) -> MVectorCheck {
    let Some(first) = v.first() else {
        return MVectorCheck::fail(None, "empty vector".into());
    };
    if !first.is_one() {
        return MVectorCheck::fail(Some(0), format!("v_0 = {first}, expected 1"));
    }
    for i in 1..v.len() {
        if v[i].is_negative() {
            return MVectorCheck::fail(Some(i), format!("v_{i} = {} is negative", v[i]));
        }
        if i >= 2 {
            let prev = &v[i - 1];
            let bound: u128 = if prev.is_zero() {
                0
            } else {
                match prev.to_u64() {
                    Some(h) => macaulay_pseudopower(h, (i - 1) as u32).expect("h, i >= 1"),
                    None => u128::MAX,
                }
            };
            let exceeds = v[i].to_u128().is_none_or(|x| x > bound);
            if exceeds {
                return MVectorCheck::fail(
                    Some(i - 1),
                    format!("v_{i} = {} exceeds v_{}^<{}> = {bound}", v[i], i - 1, i - 1),
                );
            }
        }
    }
    MVectorCheck::pass()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// 1 = monotone prefix, 2 = symmetry domination, 3 = M-vector growth,
    /// 0 = input not integral.
    pub condition: u8,
    pub index: usize,
    pub description: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GConstraintReport {
    pub integral: bool,
    pub monotone_ok: bool,
    pub symmetry_ok: bool,
    pub m_vector_ok: bool,
    pub first_violation: Option<Violation>,
}

impl GConstraintReport {
    pub fn passes(&self) -> bool {
        self.integral && self.monotone_ok && self.symmetry_ok && self.m_vector_ok
    }
}

/// Evaluates the three g-constraints for `v = (h_0, ..., h_d)`, `d = len - 1`.
/// Non-integral input fails every condition.
pub fn g_constraints(v: &[BigRational]) -> GConstraintReport {
    let ints: Option<Vec<BigInt>> = v
        .iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect();
    match ints {
        Some(ints) if !ints.is_empty() => g_constraints_int(&ints),
        Some(_) => GConstraintReport {
            integral: true,
            monotone_ok: false,
            symmetry_ok: false,
            m_vector_ok: false,
            first_violation: Some(Violation {
                condition: 0,
                index: 0,
                description: "empty vector".into(),
            }),
        },
        None => {
            let index = v.iter().position(|x| !x.is_integer()).unwrap_or(0);
            GConstraintReport {
                integral: false,
                monotone_ok: false,
                symmetry_ok: false,
                m_vector_ok: false,
                first_violation: Some(Violation {
                    condition: 0,
                    index,
                    description: format!("entry {index} = {} is not an integer", v[index]),
                }),
            }
        }
    }
}

pub fn g_constraints_int(h: &[BigInt]) -> GConstraintReport {
    let d = h.len().saturating_sub(1);
    let mut violations: Vec<Violation> = Vec::new();

    let monotone_break = (1..=d / 2).find(|&i| h[i - 1] > h[i]);
    if let Some(i) = monotone_break {
        violations.push(Violation {
            condition: 1,
            index: i,
            description: format!("h_{} = {} > h_{i} = {}", i - 1, h[i - 1], h[i]),
        });
    }

    let symmetry_break = (0..=d / 2).find(|&i| h[i] > h[d - i]);
    if let Some(i) = symmetry_break {
        violations.push(Violation {
            condition: 2,
            index: i,
            description: format!("h_{i} = {} > h_{} = {}", h[i], d - i, h[d - i]),
        });
    }

    let top = d.div_ceil(2);
    let differences: Vec<BigInt> = std::iter::once(h[0].clone())
        .chain((1..=top).map(|i| &h[i] - &h[i - 1]))
        .collect();
    let m = is_m_vector(&differences);
    if !m.is_m_vector {
        violations.push(Violation {
            condition: 3,
            index: m.failing_index.unwrap_or(0),
            description: format!(
                "difference vector {:?} is not an M-vector: {}",
                differences.iter().map(ToString::to_string).collect::<Vec<_>>(),
                m.reason.unwrap_or_default()
            ),
        });
    }

    GConstraintReport {
        integral: true,
        monotone_ok: monotone_break.is_none(),
        symmetry_ok: symmetry_break.is_none(),
        m_vector_ok: m.is_m_vector,
        first_violation: violations.into_iter().next(),
    }
}

pub fn is_palindromic<T: PartialEq>(v: &[T]) -> bool {
    v.iter().eq(v.iter().rev())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn pseudopower_examples() {
        assert_eq!(macaulay_representation(4, 2).unwrap(), vec![(3, 2), (1, 1)]);
        assert_eq!(macaulay_pseudopower(4, 2).unwrap(), 5);
        assert_eq!(macaulay_representation(3, 1).unwrap(), vec![(3, 1)]);
        assert_eq!(macaulay_pseudopower(3, 1).unwrap(), 6);
        for i in 1..10 {
            assert_eq!(macaulay_pseudopower(1, i).unwrap(), 1);
        }
        assert!(macaulay_pseudopower(0, 2).is_err());
        assert!(macaulay_pseudopower(2, 0).is_err());
    }

    #[test]
    fn m_vector_examples() {
        assert!(is_m_vector(&big(&[1, 3, 6, 10])).is_m_vector);
        let bad = is_m_vector(&big(&[1, 2, 5]));
        assert!(!bad.is_m_vector);
        assert_eq!(bad.failing_index, Some(1));
        assert_eq!(is_m_vector(&big(&[2, 1])).failing_index, Some(0));
        assert!(!is_m_vector(&[]).is_m_vector);
        assert_eq!(is_m_vector(&big(&[1, -1])).failing_index, Some(1));
        assert!(is_m_vector(&big(&[1, 0, 0])).is_m_vector);
        assert!(!is_m_vector(&big(&[1, 1, 0, 1])).is_m_vector);
    }

    #[test]
    fn g_constraint_examples() {
        assert!(g_constraints_int(&big(&[1, 2, 2])).passes());

        let r = g_constraints_int(&big(&[1, 2, 1, 3]));
        assert!(!r.symmetry_ok);
        assert_eq!(r.first_violation.as_ref().unwrap().condition, 2);
        assert_eq!(r.first_violation.unwrap().index, 1);

        let r = g_constraints_int(&big(&[1, 0, 2]));
        assert!(!r.monotone_ok);
        assert_eq!(r.first_violation.unwrap().condition, 1);

        assert!(g_constraints_int(&big(&[1])).passes());
        assert!(!g_constraints_int(&big(&[2])).passes());
    }

    #[test]
    fn fractional_input_fails_closed() {
        let v = vec![
            BigRational::one(),
            BigRational::new(3.into(), 2.into()),
            BigRational::one(),
        ];
        let r = g_constraints(&v);
        assert!(!r.integral && !r.passes());
        assert_eq!(r.first_violation.unwrap().index, 1);
    }

    #[test]
    fn palindromes() {
        assert!(is_palindromic(&[1, 4, 1]));
        assert!(!is_palindromic(&[1, 2, 3]));
        assert!(is_palindromic(&[1]));
    }

    #[test]
    fn decomposition_reconstructs_over_range() {
        for i in 1..=8u32 {
            let mut previous = 0u128;
            for h in 1..=5000u64 {
                let parts = macaulay_representation(h, i).unwrap();
                let sum: u128 = parts.iter().map(|&(a, m)| binomial_sat(a, m)).sum();
                assert_eq!(sum, u128::from(h));
                for w in parts.windows(2) {
                    assert!(w[0].0 > w[1].0 && w[0].1 == w[1].1 + 1);
                }
                let &(a_last, j_last) = parts.last().unwrap();
                assert!(a_last >= u64::from(j_last) && j_last >= 1);
                let p = macaulay_pseudopower(h, i).unwrap();
                assert!(p >= previous, "pseudopower not monotone at h = {h}, i = {i}");
                previous = p;
            }
        }
    }

    proptest! {
        #[test]
        fn g_pass_implies_difference_m_vector(v in proptest::collection::vec(-3i64..12, 1..9)) {
            let h = big(&v);
            let r = g_constraints_int(&h);
            if r.passes() {
                let d = h.len() - 1;
                let diffs: Vec<BigInt> = std::iter::once(h[0].clone())
                    .chain((1..=d.div_ceil(2)).map(|i| &h[i] - &h[i - 1]))
                    .collect();
                prop_assert!(is_m_vector(&diffs).is_m_vector);
            }
        }

        #[test]
        fn flat_palindromes_pass_first_two(t in 1i64..50, len in 2usize..=9) {
            let mut v = vec![t; len];
            v[0] = 1;
            v[len - 1] = 1;
            prop_assert!(is_palindromic(&v));
            let r = g_constraints_int(&big(&v));
            prop_assert!(r.monotone_ok && r.symmetry_ok);
        }
    }
}
