use std::f64::consts::PI;

/// Nodes and weights on `(−1, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadrature {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub order: usize,
}

/// Gauss–Legendre rule of the given order (`order ≥ 2`; smaller orders are
/// raised to 2).
///
/// Nodes come from Newton iteration on `P_n` started at Tricomi's asymptotic
/// guesses; only the nonnegative half is computed and mirrored, so the rule
/// is exactly symmetric.
pub fn gauss_legendre(order: usize) -> Quadrature {
    let n = order.max(2);
    let nf = n as f64;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n / 2 {
        let theta = PI * (i as f64 + 0.75) / (nf + 0.5);
        let mut x = (1.0 - (nf - 1.0) / (8.0 * nf * nf * nf)) * theta.cos();
        let mut dp = 0.0;
        for _ in 0..20 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 4e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        let (_, d) = legendre_with_derivative(n, 0.0);
        nodes[n / 2] = 0.0;
        weights[n / 2] = 2.0 / (d * d);
    }
    Quadrature {
        nodes,
        weights,
        order: n,
    }
}

/// `(P_n(x), P_n′(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn two_point_rule() {
        let q = gauss_legendre(2);
        let r = 1.0 / 3f64.sqrt();
        assert!((q.nodes[0] + r).abs() < 2e-16 && (q.nodes[1] - r).abs() < 2e-16);
        assert!((q.weights[0] - 1.0).abs() < 1e-15 && (q.weights[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn exact_for_degree_fourteen() {
        let q = gauss_legendre(16);
        let i: f64 = q
            .nodes
            .iter()
            .zip(&q.weights)
            .map(|(x, w)| w * x.powi(14))
            .sum();
        assert!((i - 2.0 / 15.0).abs() < 1e-15);
    }

    #[test]
    fn odd_order_has_centre_node() {
        let q = gauss_legendre(5);
        assert_eq!(q.nodes[2], 0.0);
        assert!((q.weights[2] - 128.0 / 225.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn weights_sum_to_two_and_nodes_symmetric(n in 2usize..600) {
            let q = gauss_legendre(n);
            let total: f64 = q.weights.iter().sum();
            prop_assert!((total - 2.0).abs() < 1e-14);
            for i in 0..n {
                prop_assert_eq!(q.nodes[i], -q.nodes[n - 1 - i]);
                prop_assert!(q.weights[i] > 0.0);
                if i > 0 {
                    prop_assert!(q.nodes[i] > q.nodes[i - 1]);
                }
            }
        }
    }
}
