//! Analytic expressions of the correlation measures.
//!
//! Pure-state forms take the transition probabilities `P_αβ = |a_αβ|²`;
//! mixed-state forms take the flavor coefficients `F^α_{βγ}`. They serve as
//! independent cross-checks of the generic partial-trace + eigensolver path.
//!
//! A few of the printed expansions these follow are not algebraically
//! consistent with the definitions of the measures. The versions here are
//! re-derived from the definitions:
//!
//! - `C_hs(ρ_xy) = 2 P_x P_y` for the pair coherence of a pure state.
//! - `P_hs(ρ_x) = (1 − P_x)² + P_x² − ½`, i.e. `P_x` enters squared.
//! - The mixed mutual information and conditional entropy keep the full
//!   three-mode entropy `S(ρ_eμτ)`, which only vanishes for pure states.
//! - The genuine discord carries a factor 2 on every pair-eigenvalue term and
//!   includes each of the six pair eigenvalues exactly once.

use num_complex::Complex64;

use crate::params::Flavor;
use crate::qinfo::xlog2x;
use crate::wavepacket::FlavorCoefficients;

/// The flavor not in `{x, y}`.
pub fn third(x: Flavor, y: Flavor) -> Flavor {
    debug_assert_ne!(x, y);
    Flavor::from_index(3 - x.index() - y.index()).expect("distinct flavors")
}

fn p_of(p: &[f64; 3], f: Flavor) -> f64 {
    p[f.index()]
}

// Pure states.

/// `S(ρ_xy) = −(P_x + P_y) log(P_x + P_y) − P_z log P_z`.
pub fn pure_pair_entropy(p: &[f64; 3], x: Flavor, y: Flavor) -> f64 {
    let s = p_of(p, x) + p_of(p, y);
    -xlog2x(s) - xlog2x(p_of(p, third(x, y)))
}

/// `P_vn(ρ_xy) = 2 + Σ_β P_β log P_β`, the same for every pair.
pub fn pure_pair_predictability_vn(p: &[f64; 3]) -> f64 {
    2.0 + p.iter().map(|&v| xlog2x(v)).sum::<f64>()
}

/// `C_re(ρ_xy) = −P_x log P_x − P_y log P_y + (P_x + P_y) log(P_x + P_y)`.
pub fn pure_pair_coherence_re(p: &[f64; 3], x: Flavor, y: Flavor) -> f64 {
    let (px, py) = (p_of(p, x), p_of(p, y));
    -xlog2x(px) - xlog2x(py) + xlog2x(px + py)
}

/// `C_hs(ρ_xy) = 2 P_x P_y`.
pub fn pure_pair_coherence_hs(p: &[f64; 3], x: Flavor, y: Flavor) -> f64 {
    2.0 * p_of(p, x) * p_of(p, y)
}

/// `P_hs(ρ_x) = (P_y + P_z)² + P_x² − ½`.
pub fn pure_single_predictability_hs(p: &[f64; 3], x: Flavor) -> f64 {
    let [y, z] = x.others();
    let rest = p_of(p, y) + p_of(p, z);
    rest * rest + p_of(p, x).powi(2) - 0.5
}

/// `C^nl_hs(ρ_{x|yz}) = 1 − P_x² − (P_y + P_z)²`.
pub fn pure_nonlocal_coherence_hs(p: &[f64; 3], x: Flavor) -> f64 {
    let [y, z] = x.others();
    let rest = p_of(p, y) + p_of(p, z);
    1.0 - p_of(p, x).powi(2) - rest * rest
}

/// `P_vn(ρ_x) = 1 + (P_y + P_z) log(P_y + P_z) + P_x log P_x`.
pub fn pure_single_predictability_vn(p: &[f64; 3], x: Flavor) -> f64 {
    let [y, z] = x.others();
    1.0 + xlog2x(p_of(p, y) + p_of(p, z)) + xlog2x(p_of(p, x))
}

/// `S^R(ρ_x) = S(ρ_x) − S(ρ_xy) − S(ρ_xz)` expanded in probabilities.
pub fn pure_residual_entropy(p: &[f64; 3], x: Flavor) -> f64 {
    let [y, z] = x.others();
    let (px, py, pz) = (p_of(p, x), p_of(p, y), p_of(p, z));
    -xlog2x(px) + xlog2x(py) + xlog2x(pz) + xlog2x(px + py) + xlog2x(px + pz) - xlog2x(py + pz)
}

/// `S^G = ⅓ [Σ_β P_β log P_β + Σ_pairs (P_x + P_y) log(P_x + P_y)]`.
pub fn pure_genuine_entropy(p: &[f64; 3]) -> f64 {
    let singles: f64 = p.iter().map(|&v| xlog2x(v)).sum();
    let pairs = xlog2x(p[0] + p[1]) + xlog2x(p[0] + p[2]) + xlog2x(p[1] + p[2]);
    (singles + pairs) / 3.0
}

// Mixed states.

fn f_diag(fc: &FlavorCoefficients, x: Flavor) -> f64 {
    fc.get(x, x).re
}

/// Nonzero eigenvalues `(λ₋, λ₊)` of the coherent block of `ρ_xy`:
/// `½(F_xx + F_yy ∓ √((F_xx − F_yy)² + 4 F_xy F_yx))`.
pub fn pair_block_eigenvalues(fc: &FlavorCoefficients, x: Flavor, y: Flavor) -> (f64, f64) {
    let (a, b) = (f_diag(fc, x), f_diag(fc, y));
    let c = fc.get(x, y).norm_sqr();
    let root = ((a - b).powi(2) + 4.0 * c).sqrt();
    (0.5 * (a + b - root), 0.5 * (a + b + root))
}

fn pair_block_xlogx(fc: &FlavorCoefficients, x: Flavor, y: Flavor) -> f64 {
    let (lm, lp) = pair_block_eigenvalues(fc, x, y);
    xlog2x(lm) + xlog2x(lp)
}

/// `S(ρ_xy) = −F_zz log F_zz − Σ_± λ_± log λ_±`.
pub fn mixed_pair_entropy(fc: &FlavorCoefficients, x: Flavor, y: Flavor) -> f64 {
    -xlog2x(f_diag(fc, third(x, y))) - pair_block_xlogx(fc, x, y)
}

/// `S(ρ_x) = −F_xx log F_xx − (F_yy + F_zz) log(F_yy + F_zz)`.
pub fn mixed_single_entropy(fc: &FlavorCoefficients, x: Flavor) -> f64 {
    let [y, z] = x.others();
    -xlog2x(f_diag(fc, x)) - xlog2x(f_diag(fc, y) + f_diag(fc, z))
}

/// `P_vn(ρ_xy) = 2 + Σ_β F_ββ log F_ββ`.
pub fn mixed_pair_predictability_vn(fc: &FlavorCoefficients) -> f64 {
    2.0 + Flavor::ALL.iter().map(|&b| xlog2x(f_diag(fc, b))).sum::<f64>()
}

/// `C_re(ρ_xy) = −F_xx log F_xx − F_yy log F_yy + Σ_± λ_± log λ_±`.
pub fn mixed_pair_coherence_re(fc: &FlavorCoefficients, x: Flavor, y: Flavor) -> f64 {
    -xlog2x(f_diag(fc, x)) - xlog2x(f_diag(fc, y)) + pair_block_xlogx(fc, x, y)
}

/// `S(ρ_eμτ)` from the eigenvalues of the 3×3 matrix `F`.
pub fn mixed_full_entropy(fc: &FlavorCoefficients) -> f64 {
    -hermitian3_eigenvalues(&fc.f).iter().map(|&l| xlog2x(l)).sum::<f64>()
}

/// `I_{xy:z} = −(F_xx + F_yy) log(F_xx + F_yy) − 2 F_zz log F_zz − Σ_± λ_± log λ_± − S(ρ_eμτ)`.
pub fn mixed_pair_mutual_information(fc: &FlavorCoefficients, x: Flavor, y: Flavor) -> f64 {
    let z = third(x, y);
    -xlog2x(f_diag(fc, x) + f_diag(fc, y))
        - 2.0 * xlog2x(f_diag(fc, z))
        - pair_block_xlogx(fc, x, y)
        - mixed_full_entropy(fc)
}

/// `S_{xy|z} = S(ρ_eμτ) + (F_xx + F_yy) log(F_xx + F_yy) + F_zz log F_zz`.
pub fn mixed_pair_conditional_entropy(fc: &FlavorCoefficients, x: Flavor, y: Flavor) -> f64 {
    let z = third(x, y);
    mixed_full_entropy(fc) + xlog2x(f_diag(fc, x) + f_diag(fc, y)) + xlog2x(f_diag(fc, z))
}

/// `P_vn(ρ_x) = 1 + F_xx log F_xx + (F_yy + F_zz) log(F_yy + F_zz)`.
pub fn mixed_single_predictability_vn(fc: &FlavorCoefficients, x: Flavor) -> f64 {
    1.0 - mixed_single_entropy(fc, x)
}

/// `QD(ρ_xy)`, the discord of the pair against the third mode. It reduces to `S(ρ_xy)`.
pub fn mixed_pair_discord(fc: &FlavorCoefficients, x: Flavor, y: Flavor) -> f64 {
    mixed_pair_entropy(fc, x, y)
}

/// `QD^R(ρ_x) = −F_xx log F_xx + F_yy log F_yy + F_zz log F_zz − (F_yy + F_zz) log(F_yy + F_zz)
///  + Σ_± λ^{xy}_± log λ^{xy}_± + Σ_± λ^{xz}_± log λ^{xz}_±`.
pub fn mixed_residual_discord(fc: &FlavorCoefficients, x: Flavor) -> f64 {
    let [y, z] = x.others();
    let (fx, fy, fz) = (f_diag(fc, x), f_diag(fc, y), f_diag(fc, z));
    -xlog2x(fx) + xlog2x(fy) + xlog2x(fz) - xlog2x(fy + fz) + pair_block_xlogx(fc, x, y) + pair_block_xlogx(fc, x, z)
}

/// `QD^G = ⅓ [Σ_β F_ββ log F_ββ − Σ_pairs (F_xx + F_yy) log(F_xx + F_yy)
///  + 2 Σ_pairs Σ_± λ_± log λ_±]`.
pub fn mixed_genuine_discord(fc: &FlavorCoefficients) -> f64 {
    let d = fc.diagonal();
    let singles: f64 = d.iter().map(|&v| xlog2x(v)).sum();
    let sums = xlog2x(d[0] + d[1]) + xlog2x(d[0] + d[2]) + xlog2x(d[1] + d[2]);
    let blocks: f64 = [
        (Flavor::E, Flavor::Mu),
        (Flavor::E, Flavor::Tau),
        (Flavor::Mu, Flavor::Tau),
    ]
    .iter()
    .map(|&(x, y)| pair_block_xlogx(fc, x, y))
    .sum();
    (singles - sums + 2.0 * blocks) / 3.0
}

// 3×3 Hermitian eigenvalues.

type C3 = [Complex64; 3];

fn cross(a: &C3, b: &C3) -> C3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm(v: &C3) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn scale(v: &C3, s: f64) -> C3 {
    v.map(|z| z * s)
}

/// Eigenvalues of a 3×3 Hermitian matrix, descending.
///
/// The trigonometric solution of the characteristic cubic locates the most
/// isolated eigenvalue; its eigenvector follows from a cross product of two
/// rows of `A − λI`. The other two eigenvalues come from the exact 2×2
/// compression of `A` onto the orthogonal complement, so small eigenvalues of
/// nearly rank-one matrices stay accurate to rounding level instead of the
/// `√ε` that the cubic alone delivers near a double root.
pub fn hermitian3_eigenvalues(a: &[[Complex64; 3]; 3]) -> [f64; 3] {
    let q = (a[0][0].re + a[1][1].re + a[2][2].re) / 3.0;
    let p1 = a[0][1].norm_sqr() + a[0][2].norm_sqr() + a[1][2].norm_sqr();
    let p2 = (a[0][0].re - q).powi(2) + (a[1][1].re - q).powi(2) + (a[2][2].re - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    let scale_a = a
        .iter()
        .flatten()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    if p <= 1e-15 * scale_a {
        return [q, q, q];
    }

    // B = (A − qI)/p, r = det(B)/2 ∈ [−1, 1].
    let mut b = *a;
    for (i, row) in b.iter_mut().enumerate() {
        row[i] -= q;
        for z in row.iter_mut() {
            *z /= p;
        }
    }
    let det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
        + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    let r = (det.re / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let l1 = q + 2.0 * p * phi.cos();
    let l3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::FRAC_PI_3).cos();
    let l2 = 3.0 * q - l1 - l3;
    let iso = if l1 - l2 >= l2 - l3 { l1 } else { l3 };

    // Eigenvector of the isolated eigenvalue: rows of A − λI are (bilinearly)
    // orthogonal to it.
    let mut m = *a;
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= iso;
    }
    let candidates = [cross(&m[0], &m[1]), cross(&m[0], &m[2]), cross(&m[1], &m[2])];
    let best = candidates
        .iter()
        .max_by(|x, y| norm(x).total_cmp(&norm(y)))
        .expect("three candidates");
    let nb = norm(best);
    if nb == 0.0 {
        let mut out = [l1, l2, l3];
        out.sort_by(|x, y| y.total_cmp(x));
        return out;
    }
    let v = scale(best, 1.0 / nb);

    // Orthonormal basis {u1, u2} of v⊥.
    let k = (0..3)
        .min_by(|&i, &j| v[i].norm().total_cmp(&v[j].norm()))
        .expect("three components");
    let mut u1 = [Complex64::new(0.0, 0.0); 3];
    u1[k] = Complex64::new(1.0, 0.0);
    let overlap = v[k].conj();
    for i in 0..3 {
        u1[i] -= v[i] * overlap;
    }
    let u1 = scale(&u1, 1.0 / norm(&u1));
    let u2 = cross(&v, &u1).map(|z| z.conj());

    let quad = |x: &C3, y: &C3| -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for i in 0..3 {
            for j in 0..3 {
                s += x[i].conj() * a[i][j] * y[j];
            }
        }
        s
    };
    let b11 = quad(&u1, &u1).re;
    let b22 = quad(&u2, &u2).re;
    let b12 = quad(&u1, &u2);
    let mean = 0.5 * (b11 + b22);
    let rad = (0.25 * (b11 - b22).powi(2) + b12.norm_sqr()).sqrt();
    let (mu_hi, mu_lo) = (mean + rad, mean - rad);
    let trace = a[0][0].re + a[1][1].re + a[2][2].re;
    let lam = trace - mu_hi - mu_lo;

    let mut out = [lam, mu_hi, mu_lo];
    out.sort_by(|x, y| y.total_cmp(x));
    out
}
