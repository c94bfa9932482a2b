//! Exact summation of floating-point values as a nonoverlapping expansion,
//! used where a comparison against an integer must not depend on rounding.

/// Running sum held exactly as a list of nonoverlapping components in
/// increasing magnitude.
#[derive(Clone, Debug, Default)]
pub struct ExactSum {
    parts: Vec<f64>,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

impl ExactSum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `x` exactly. `x` must be finite.
    pub fn add(&mut self, x: f64) {
        debug_assert!(x.is_finite());
        let mut carry = x;
        let mut kept = 0;
        for i in 0..self.parts.len() {
            let (s, err) = two_sum(carry, self.parts[i]);
            if err != 0.0 {
                self.parts[kept] = err;
                kept += 1;
            }
            carry = s;
        }
        self.parts.truncate(kept);
        if carry != 0.0 {
            self.parts.push(carry);
        }
    }

    /// Nearest-ish double to the exact sum.
    pub fn value(&self) -> f64 {
        self.parts.iter().sum()
    }

    /// Sign of `sum - c`, computed exactly.
    pub fn cmp_to(&self, c: f64) -> std::cmp::Ordering {
        let mut t = self.clone();
        t.add(-c);
        // the largest component dominates the sign of a nonoverlapping expansion
        match t.parts.last() {
            None => std::cmp::Ordering::Equal,
            Some(&top) => top.partial_cmp(&0.0).expect("finite expansion"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cmp::Ordering;

    #[test]
    fn recovers_cancelled_bits() {
        let mut s = ExactSum::new();
        for x in [1e16, 1.0, -1e16] {
            s.add(x);
        }
        assert_eq!(s.value(), 1.0);
        assert_eq!(s.cmp_to(1.0), Ordering::Equal);
    }

    #[test]
    fn decides_sign_past_rounding() {
        // 0.1 + 0.2 rounds above 0.3 in doubles but the exact sum of the
        // stored values is also above the stored 0.3
        let mut s = ExactSum::new();
        s.add(0.1);
        s.add(0.2);
        assert_eq!(s.cmp_to(0.3), Ordering::Greater);

        let mut t = ExactSum::new();
        for _ in 0..10 {
            t.add(0.1);
        }
        // ten stored 0.1 values sum to slightly more than 1
        assert_eq!(t.cmp_to(1.0), Ordering::Greater);
        assert_eq!(t.cmp_to(1.0 + 1e-15), Ordering::Less);
    }
}
