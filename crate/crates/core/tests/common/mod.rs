//! Independent reference computations shared by the integration tests.
//! Everything here works from the defining formulas over plain `u64` masks
//! and `f64` slices, without calling the library's closed forms.

#![allow(dead_code)]

/// Bit `i` of `x` set means `x_i = -1`.
pub fn weight(mu: &[f64], x: u64) -> f64 {
    mu.iter()
        .enumerate()
        .map(|(i, m)| if (x >> i) & 1 == 1 { (1.0 - m) / 2.0 } else { (1.0 + m) / 2.0 })
        .product()
}

pub fn parity(a: u64, x: u64) -> bool {
    (a & x).count_ones() % 2 == 1
}

pub fn phi(mu: &[f64], j: u64, x: u64) -> f64 {
    (0..mu.len())
        .filter(|i| (j >> i) & 1 == 1)
        .map(|i| {
            let xi = if (x >> i) & 1 == 1 { -1.0 } else { 1.0 };
            (xi - mu[i]) / (1.0 - mu[i] * mu[i]).sqrt()
        })
        .product()
}

/// `sum_x D(x) (-1)^{f(x)} phi_j(x)` by enumeration.
pub fn coefficient_by_definition(a: u64, mu: &[f64], j: u64) -> f64 {
    (0..1u64 << mu.len())
        .map(|x| weight(mu, x) * if parity(a, x) { -1.0 } else { 1.0 } * phi(mu, j, x))
        .sum()
}

/// Product formula for the coefficient, written out per coordinate.
pub fn coefficient_formula(a: u64, mu: &[f64], j: u64) -> f64 {
    let mut v = 1.0;
    for (i, &m) in mu.iter().enumerate() {
        let (ai, ji) = ((a >> i) & 1 == 1, (j >> i) & 1 == 1);
        v *= match (ai, ji) {
            (false, false) => 1.0,
            (false, true) => 0.0,
            (true, false) => m,
            (true, true) => (1.0 - m * m).sqrt(),
        };
    }
    v
}

/// Full outcome law indexed by `(j << 1) | label`: label 0 carries all of
/// its mass at `j = 0`, label 1 carries `coef(j)^2 / 2`.
pub fn closed_form_distribution(a: u64, mu: &[f64]) -> Vec<f64> {
    let n = mu.len();
    let mut p = vec![0.0; 1 << (n + 1)];
    p[0] = 0.5;
    for j in 0..1u64 << n {
        p[((j << 1) | 1) as usize] = 0.5 * coefficient_formula(a, mu, j).powi(2);
    }
    p
}

pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    assert_eq!(p.len(), q.len());
    0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>()
}

/// `sum_x D(x) [f_a(x) = f_b(x)]`.
pub fn overlap_by_definition(a: u64, b: u64, mu: &[f64]) -> f64 {
    (0..1u64 << mu.len()).filter(|&x| parity(a, x) == parity(b, x)).map(|x| weight(mu, x)).sum()
}

pub fn entropy_bits(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -(p * p.log2() + (1.0 - p) * (1.0 - p).log2())
    }
}

/// Mask of a library bit string (position `i` in bit `i`).
pub fn mask_of(s: &biasedbv::BitString) -> u64 {
    s.to_u64().expect("at most 64 bits")
}
