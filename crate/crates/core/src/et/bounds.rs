use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::perm::pointset::binomial_big;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundVariant {
    /// |G| >= C(n, k-1) / k
    Weak,
    /// |G| >= 2 C(n, k-1) / (k+1)
    Et,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub variant: BoundVariant,
    pub order: String,
    /// The required lower bound as an exact fraction `numerator / denominator`.
    pub numerator: String,
    pub denominator: u64,
    pub pass: bool,
    /// When the bound fails at k, it fails for every k' in this range as well.
    pub fails_through: Option<(usize, usize)>,
}

fn holds(n: usize, k: usize, order: &BigUint, variant: BoundVariant) -> (BigUint, u64, bool) {
    let c = binomial_big(n as u64, k as u64 - 1);
    let (num, den) = match variant {
        BoundVariant::Weak => (c, k as u64),
        BoundVariant::Et => (c * 2u32, k as u64 + 1),
    };
    let pass = order * den >= num;
    (num, den, pass)
}

/// Exact check of the order lower bound for k-et (or weak k-et).
pub fn order_bound(n: usize, k: usize, order: &BigUint, variant: BoundVariant) -> BoundReport {
    assert!(k >= 1 && k <= n, "order_bound needs 1 <= k <= n");
    let (num, den, pass) = holds(n, k, order, variant);
    let fails_through = if pass || 2 * k > n {
        None
    } else {
        Some((k, n / 2))
    };
    BoundReport {
        n,
        k,
        variant,
        order: order.to_string(),
        numerator: num.to_string(),
        denominator: den,
        pass,
        fails_through,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert!(order_bound(24, 8, &BigUint::from(244823040u64), BoundVariant::Weak).pass);
        let hs = order_bound(176, 6, &BigUint::from(44352000u64), BoundVariant::Weak);
        assert!(!hs.pass);
        assert_eq!(hs.fails_through, Some((6, 88)));
        assert!(order_bound(30, 2, &BigUint::from(15u32), BoundVariant::Weak).pass);
        assert!(!order_bound(30, 2, &BigUint::from(14u32), BoundVariant::Weak).pass);
    }

    proptest! {
        #[test]
        fn failure_propagates_up_to_half(n in 4usize..60, k in 2usize..30, order in 1u64..1_000_000) {
            prop_assume!(2 * k <= n);
            let o = BigUint::from(order);
            for v in [BoundVariant::Weak, BoundVariant::Et] {
                if !order_bound(n, k, &o, v).pass {
                    for k2 in k..=n / 2 {
                        prop_assert!(!order_bound(n, k2, &o, v).pass);
                    }
                }
            }
        }

        #[test]
        fn et_bound_implies_weak_bound(n in 4usize..60, k in 2usize..30, order in 1u64..1_000_000) {
            prop_assume!(k <= n);
            let o = BigUint::from(order);
            if order_bound(n, k, &o, BoundVariant::Et).pass {
                prop_assert!(order_bound(n, k, &o, BoundVariant::Weak).pass);
            }
        }
    }
}
