//! Shared oracles for the integration suites. Everything here recomputes
//! reference values from definitions (extended precision, exact integers,
//! brute force), independent of the code paths under test.

#![allow(dead_code)]

use li2::{Complex, Dd, Real, Scalar};

pub type C64 = Complex<f64>;
pub type Cdd = Complex<Dd>;

pub fn cdd(x: C64) -> Cdd {
    Complex::new(Dd::from_f64(x.re), Dd::from_f64(x.im))
}

pub fn to_c64(x: Cdd) -> C64 {
    Complex::new(x.re.to_f64(), x.im.to_f64())
}

/// Maclaurin reference Σ_{k≥0} x^{k+1}/(k+1)² summed term by term in
/// double-double. Usable for |x| < 1; the tail is cut when terms drop below
/// 1e-27 of the running sum.
pub fn li2_maclaurin(x: Cdd) -> Cdd {
    let mut sum = Cdd::zero();
    let mut power = x;
    let tol = Dd::from_f64(1e-27);
    for k in 1..60_000u64 {
        let term = power / Complex::from_re(Dd::from_f64((k * k) as f64));
        sum = sum + term;
        if term.abs() <= tol * sum.abs() && k > 4 {
            return sum;
        }
        power = power * x;
    }
    sum
}

/// The accelerated summand from its definition: W_k = (B(−x/2, 1) Q)_k
/// divided by (1 − x/2)^{k+1}, with the transform evaluated as the literal
/// double sum over a Pascal triangle in double-double.
pub fn w_direct_definition(x: C64, count: usize) -> Vec<Cdd> {
    let x = cdd(x);
    let alpha = -x / Complex::from_re(Dd::from_f64(2.0));
    let q: Vec<Cdd> = (0..count)
        .map(|k| {
            let mut p = Cdd::one();
            for _ in 0..=k {
                p = p * x;
            }
            p / Complex::from_re(Dd::from_f64(((k + 1) * (k + 1)) as f64))
        })
        .collect();
    // Pascal triangle, exact in double-double over this range.
    let mut triangle: Vec<Vec<Dd>> = vec![vec![Dd::ONE]];
    for n in 1..count {
        let prev = &triangle[n - 1];
        let mut row = vec![Dd::ONE; n + 1];
        for k in 1..n {
            row[k] = prev[k - 1] + prev[k];
        }
        triangle.push(row);
    }
    let weight_base = Cdd::one() + alpha; // 1 − x/2
    let mut out = Vec::with_capacity(count);
    let mut weight = weight_base;
    // n indexes a triangle column.
    #[allow(clippy::needless_range_loop)]
    for n in 0..count {
        let mut acc = Cdd::zero();
        let mut alpha_pow = Cdd::one();
        for k in (0..=n).rev() {
            acc = acc + Complex::from_re(triangle[n][k]) * alpha_pow * q[k];
            alpha_pow = alpha_pow * alpha;
        }
        out.push(acc / weight);
        weight = weight * weight_base;
    }
    out
}

/// Plain left-to-right binary64 summation.
pub fn naive_sum(terms: &[f64]) -> f64 {
    terms.iter().sum()
}

/// Reference sum carried in double-double.
pub fn dd_sum(terms: &[f64]) -> Dd {
    terms
        .iter()
        .fold(Dd::ZERO, |acc, &t| acc + Dd::from_f64(t))
}

/// Exact-integer binomial coefficient.
pub fn binom_i128(n: i128, k: i128) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    let mut num: i128 = 1;
    for i in 0..k {
        num = num * (n - i) / (i + 1);
    }
    num
}

/// Exact-integer mirror of the k^p C(n,k) reduction: coefficient polynomials
/// (ascending powers of n) built by iterating k C(n,k) = n C(n,k) − n C(n−1,k).
pub fn binomial_reduction_i128(p: usize) -> Vec<Vec<i128>> {
    let mut cs: Vec<Vec<i128>> = vec![vec![1]];
    for _ in 0..p {
        let mut next = vec![vec![0i128]; cs.len() + 1];
        for (j, c) in cs.iter().enumerate() {
            let mut prod = vec![0i128; c.len() + 1];
            for (i, &a) in c.iter().enumerate() {
                prod[i] += -(j as i128) * a;
                prod[i + 1] += a;
            }
            for (i, &v) in prod.iter().enumerate() {
                if next[j].len() <= i {
                    next[j].resize(i + 1, 0);
                }
                next[j][i] += v;
                if next[j + 1].len() <= i {
                    next[j + 1].resize(i + 1, 0);
                }
                next[j + 1][i] -= v;
            }
        }
        cs = next;
    }
    for c in &mut cs {
        while c.last() == Some(&0) {
            c.pop();
        }
    }
    cs
}

pub fn eval_i128(c: &[i128], n: i128) -> i128 {
    c.iter().rev().fold(0, |acc, &a| acc * n + a)
}

/// Convergence rate max(|α|, |α+x|)/|α+1| of the transformed series.
pub fn alpha_rate(alpha: C64, x: C64) -> f64 {
    let d = (alpha + C64::one()).abs();
    if d == 0.0 {
        return f64::INFINITY;
    }
    alpha.abs().max((alpha + x).abs()) / d
}

/// Brute-force minimization of the rate over the α grid [−4, 4]², step 0.01.
pub fn grid_min_rate(x: C64) -> f64 {
    let mut best = f64::INFINITY;
    for ir in -400..=400 {
        for ii in -400..=400 {
            let a = C64::new(ir as f64 * 0.01, ii as f64 * 0.01);
            let r = alpha_rate(a, x);
            if r < best {
                best = r;
            }
        }
    }
    best
}
