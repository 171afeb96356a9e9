//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's numerics.

#![allow(dead_code)]

use num_complex::Complex64;

// Double-double arithmetic.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn from_i128(c: i128) -> Dd {
        let hi = c as f64;
        let lo = (c - hi as i128) as f64;
        let (hi, lo) = two_sum(hi, lo);
        Dd { hi, lo }
    }

    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (hi, lo) = two_sum(s, e + self.lo + o.lo);
        Dd { hi, lo }
    }

    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let (hi, lo) = two_sum(p, e + self.hi * o.lo + self.lo * o.hi);
        Dd { hi, lo }
    }

    pub fn mul_f64(self, x: f64) -> Dd {
        self.mul(Dd::from_f64(x))
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn signum(self) -> f64 {
        if self.hi != 0.0 {
            self.hi.signum()
        } else if self.lo != 0.0 {
            self.lo.signum()
        } else {
            0.0
        }
    }
}

/// Complex number with double-double parts.
#[derive(Debug, Clone, Copy)]
pub struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub fn from_c(z: Complex64) -> CDd {
        CDd {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    pub fn mul(self, o: CDd) -> CDd {
        CDd {
            re: self.re.mul(o.re).add(self.im.mul(o.im).neg()),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    pub fn add(self, o: CDd) -> CDd {
        CDd {
            re: self.re.add(o.re),
            im: self.im.add(o.im),
        }
    }

    pub fn conj(self) -> CDd {
        CDd {
            re: self.re,
            im: self.im.neg(),
        }
    }
}

// Characteristic polynomial oracle.

/// `det(λI − A)` coefficients, lowest degree first, for a Hermitian matrix
/// with Gaussian-integer entries `(re, im)`, exactly, by Faddeev–LeVerrier.
pub fn charpoly_gaussian(a: &[(i128, i128)], n: usize) -> Vec<i128> {
    let mul = |x: (i128, i128), y: (i128, i128)| (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0);
    let mut c = vec![0_i128; n + 1];
    c[n] = 1;
    let mut m = vec![(0_i128, 0_i128); n * n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![(0_i128, 0_i128); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = (0, 0);
                for l in 0..n {
                    let p = mul(a[i * n + l], m[l * n + j]);
                    acc = (acc.0 + p.0, acc.1 + p.1);
                }
                next[i * n + j] = acc;
            }
            next[i * n + i].0 += c[n - k + 1];
        }
        m = next;
        let mut tr = (0_i128, 0_i128);
        for i in 0..n {
            for l in 0..n {
                let p = mul(a[i * n + l], m[l * n + i]);
                tr = (tr.0 + p.0, tr.1 + p.1);
            }
        }
        assert_eq!(tr.1, 0, "trace of a Hermitian product is real");
        assert_eq!(tr.0 % k as i128, 0, "Faddeev–LeVerrier division is exact");
        c[n - k] = -tr.0 / k as i128;
    }
    c
}

fn eval_dd(coeffs: &[Dd], x: f64) -> Dd {
    let xd = Dd::from_f64(x);
    coeffs.iter().rev().fold(Dd::ZERO, |acc, &c| acc.mul(xd).add(c))
}

fn bisect(coeffs: &[Dd], mut lo: f64, mut hi: f64) -> f64 {
    let (mut slo, shi) = (eval_dd(coeffs, lo).signum(), eval_dd(coeffs, hi).signum());
    if slo == 0.0 {
        return lo;
    }
    if shi == 0.0 {
        return hi;
    }
    if slo == shi {
        // Even-multiplicity root sitting on an interval end.
        let (a, b) = (eval_dd(coeffs, lo).to_f64().abs(), eval_dd(coeffs, hi).to_f64().abs());
        return if a <= b { lo } else { hi };
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return mid;
        }
        let s = eval_dd(coeffs, mid).signum();
        if s == 0.0 {
            return mid;
        }
        if s == slo {
            lo = mid;
            slo = s;
        } else {
            hi = mid;
        }
    }
}

/// All roots of a real-rooted integer polynomial inside `[-bound, bound]`,
/// ascending. Roots of the derivative bracket the roots of the polynomial.
pub fn real_roots(c: &[i128], bound: f64) -> Vec<f64> {
    let deg = c.len() - 1;
    if deg == 1 {
        return vec![-(c[0] as f64) / c[1] as f64];
    }
    let deriv: Vec<i128> = (1..=deg).map(|k| c[k] * k as i128).collect();
    let crit = real_roots(&deriv, bound);
    let coeffs: Vec<Dd> = c.iter().map(|&v| Dd::from_i128(v)).collect();
    let mut edges = vec![-bound];
    edges.extend(crit);
    edges.push(bound);
    edges.windows(2).map(|w| bisect(&coeffs, w[0], w[1])).collect()
}

/// Eigenvalues (ascending) of `A / scale` with `A` Gaussian-integer Hermitian.
pub fn oracle_eigenvalues(a: &[(i128, i128)], n: usize, scale: f64) -> Vec<f64> {
    let c = charpoly_gaussian(a, n);
    let gersh = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| ((a[i * n + j].0.pow(2) + a[i * n + j].1.pow(2)) as f64).sqrt())
                .sum::<f64>()
        })
        .fold(0.0, f64::max);
    real_roots(&c, gersh + 1.0).into_iter().map(|r| r / scale).collect()
}

// Oscillation oracles.

pub const HBAR_C_EV_M: f64 = 197.326_980_4e-9;

/// Radians per (eV² · km/GeV) for `Δm² L / (2E)`.
pub fn phase_constant() -> f64 {
    1e3 / (2.0 * 1e9 * HBAR_C_EV_M)
}

pub struct Angles {
    pub t12: f64,
    pub t13: f64,
    pub t23: f64,
    pub delta: f64,
    pub dm21: f64,
    pub dm31: f64,
}

pub fn reference_angles() -> Angles {
    Angles {
        t12: 33.48_f64.to_radians(),
        t13: 8.50_f64.to_radians(),
        t23: 42.3_f64.to_radians(),
        delta: 0.0,
        dm21: 7.50e-5,
        dm31: 2.46e-3,
    }
}

type M3 = [[Complex64; 3]; 3];

fn matmul(a: &M3, b: &M3) -> M3 {
    let mut out = [[Complex64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

/// PMNS as the rotation product `R23 · U13(δ) · R12`.
pub fn pmns_oracle(a: &Angles) -> M3 {
    let z = Complex64::new(0.0, 0.0);
    let r = |x: f64| Complex64::new(x, 0.0);
    let (s12, c12) = a.t12.sin_cos();
    let (s13, c13) = a.t13.sin_cos();
    let (s23, c23) = a.t23.sin_cos();
    let e = Complex64::from_polar(1.0, a.delta);
    let r23 = [[r(1.0), z, z], [z, r(c23), r(s23)], [z, r(-s23), r(c23)]];
    let u13 = [[r(c13), z, r(s13) * e.conj()], [z, r(1.0), z], [-r(s13) * e, z, r(c13)]];
    let r12 = [[r(c12), r(s12), z], [r(-s12), r(c12), z], [z, z, r(1.0)]];
    matmul(&matmul(&r23, &u13), &r12)
}

/// `P_αβ = Σ_ik U*_αi U_βi U_αk U*_βk e^{−i Δm²_ik L/(2E)}`, summed in
/// double-double precision.
pub fn probability_double_sum(a: &Angles, alpha: usize, beta: usize, l_over_e: f64) -> f64 {
    let u = pmns_oracle(a);
    let m = [0.0, a.dm21, a.dm31];
    let k = phase_constant();
    let mut acc = CDd::from_c(Complex64::new(0.0, 0.0));
    for i in 0..3 {
        for j in 0..3 {
            let w = CDd::from_c(u[alpha][i].conj())
                .mul(CDd::from_c(u[beta][i]))
                .mul(CDd::from_c(u[alpha][j]))
                .mul(CDd::from_c(u[beta][j].conj()));
            let ph = CDd::from_c(Complex64::from_polar(1.0, -k * (m[i] - m[j]) * l_over_e));
            acc = acc.add(w.mul(ph));
        }
    }
    acc.re.to_f64()
}

/// Fully decohered flavor coefficients `F_βγ = Σ_j |U_αj|² U_βj U*_γj`.
pub fn decohered_coefficients(a: &Angles, alpha: usize) -> M3 {
    let u = pmns_oracle(a);
    let mut f = [[Complex64::new(0.0, 0.0); 3]; 3];
    for (b, row) in f.iter_mut().enumerate() {
        for (g, v) in row.iter_mut().enumerate() {
            *v = (0..3).map(|j| u[alpha][j].norm_sqr() * u[b][j] * u[g][j].conj()).sum();
        }
    }
    f
}

fn xlx(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        p * p.log2()
    }
}

/// Genuine discord written out term by term from the flavor coefficients.
pub fn genuine_discord_from_f(f: &M3) -> f64 {
    let d = [f[0][0].re, f[1][1].re, f[2][2].re];
    let mut total = d.iter().map(|&p| xlx(p)).sum::<f64>();
    for (x, y) in [(0, 1), (0, 2), (1, 2)] {
        let s = d[x] + d[y];
        total -= xlx(s);
        let root = ((d[x] - d[y]).powi(2) + 4.0 * (f[x][y] * f[y][x]).re).sqrt();
        total += 2.0 * (xlx(0.5 * (s - root)) + xlx(0.5 * (s + root)));
    }
    total / 3.0
}
