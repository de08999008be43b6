//! Certified two-sided bounds on `‖g‖_S` far beyond BFS range.
//!
//! Upper bounds are explicit words that evaluate to `g`. Lower bounds come
//! from how fast coordinates can grow along a word: a word with `ℓ`
//! non-stable letters whose stable-letter height stays in `[−H⁻, H⁺]` moves
//! each coordinate by at most `ℓ · λ^{H}` for the family's expansion rate `λ`,
//! and it needs at least `2H⁺ + 2H⁻ − |s|` stable letters to visit both
//! extremes and end at height `s`.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{Group, GroupElement, GroupSpec, MAdic, Mat2, Word};

/// Digits allowed in a Sol expansion before falling back to coordinates.
pub const SOL_DIGIT_CAP: usize = 4096;

/// How a lower bound was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LowerMethod {
    Identity,
    /// Exact length from BFS.
    Exact,
    /// `ℓ¹` norm in `Z^d`.
    L1Norm,
    /// Area bound on the central coordinate of the Heisenberg group.
    Area,
    /// Coordinate growth against stable-letter height.
    HeightProfile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerWitness {
    pub method: LowerMethod,
    /// Optimal `(H⁺, H⁻)` found by the height-profile bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub heights: Option<(u64, u64)>,
}

impl LowerWitness {
    fn plain(method: LowerMethod) -> Self {
        LowerWitness {
            method,
            heights: None,
        }
    }
}

/// `lower ≤ ‖g‖_S ≤ upper`, with `upper_witness` a word of length `upper`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthInterval {
    pub lower: u128,
    pub upper: u128,
    pub lower_witness: LowerWitness,
    #[serde(skip)]
    pub upper_witness: Word,
    /// Upper witness rendered over the generator names.
    pub upper_word: String,
}

impl LengthInterval {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn exact(len: u128, word: Word, names: &[String]) -> Self {
        LengthInterval {
            lower: len,
            upper: len,
            lower_witness: LowerWitness::plain(LowerMethod::Exact),
            upper_word: render(&word, names),
            upper_witness: word,
        }
    }
}

fn render(w: &Word, names: &[String]) -> String {
    w.display(names).to_string()
}

fn to_len(n: &BigInt) -> Result<u128> {
    n.to_u128()
        .ok_or_else(|| Error::ExponentTooLarge(format!("word length {n} exceeds 128 bits")))
}

/// Certified interval for `‖g‖_S`.
pub fn word_length_bounds(group: &Group, g: &GroupElement) -> Result<LengthInterval> {
    if !group.belongs(g) {
        return Err(Error::FamilyMismatch(group.spec().family_name()));
    }
    let word = upper_word(group, g)?;
    debug_assert_eq!(&group.evaluate_word(&word)?, g);
    let (lower, lower_witness) = lower_bound(group, g)?;
    let upper = to_len(&word.len())?;
    Ok(LengthInterval {
        lower: lower.min(upper),
        upper,
        lower_witness,
        upper_word: render(&word, group.generator_names()),
        upper_witness: word,
    })
}

// ---------------------------------------------------------------- upper words

/// Word for `g` built from the family's digit expansion.
pub fn upper_word(group: &Group, g: &GroupElement) -> Result<Word> {
    Ok(match (group.spec(), g) {
        (GroupSpec::FreeAbelian { .. }, GroupElement::FreeAbelian(v)) => {
            let mut w = Word::empty();
            for (i, c) in v.iter().enumerate() {
                w.push(i, c.clone());
            }
            w
        }
        (GroupSpec::Heisenberg, GroupElement::Heisenberg { a, b, c }) => heisenberg_word(a, b, c),
        (GroupSpec::BaumslagSolitar { m }, GroupElement::Bs { q, s }) => {
            let base = BigInt::from(*m);
            let e = i64::from(q.exponent());
            let mut w = Word::letter(1, -e);
            w.append(&horner_word(q.numerator(), &base, 0, 1));
            w.push(1, e + *s);
            w
        }
        (GroupSpec::Sol { .. }, GroupElement::Sol { v, s }) => {
            let mut w = sol_word(group, v, SOL_DIGIT_CAP)
                .unwrap_or_else(|| coordinate_sol_word(v));
            w.push(2, *s);
            w
        }
        (GroupSpec::Ut3Lamp { p }, GroupElement::Ut3Lamp { x, y, z, s }) => {
            ut3lamp_word(*p, x, y, z, *s)
        }
        _ => return Err(Error::FamilyMismatch(group.spec().family_name())),
    })
}

/// Shortest word of the form `a^{c₀} t a^{c₁} t ⋯ t a^{c_j} t^{−j}` for `a^n`,
/// where `t a t⁻¹ = a^{base}` and every `|c_i| < base` except the top one.
///
/// Writing `n = c₀ + base · n₁` costs `|c₀| + 2` plus the cost of `n₁`, and
/// `c₀` is either the nonnegative residue or that residue minus `base`, so
/// the values reachable at level `j` are `⌊n / base^j⌋` and that plus one.
/// A two-state dynamic program over the levels picks the optimum.
pub fn horner_word(n: &BigInt, base: &BigInt, letter: usize, conj: usize) -> Word {
    if n.is_zero() {
        return Word::empty();
    }
    // floors[j] = ⌊n / base^j⌋, stopping once it reaches 0 or −1
    let mut floors = vec![n.clone()];
    loop {
        let last = floors.last().unwrap();
        if last.is_zero() || *last == -BigInt::one() {
            break;
        }
        floors.push(last.div_floor(base));
    }
    floors.push(floors.last().unwrap().div_floor(base));
    let levels = floors.len();

    // best[j][d]: (cost, digit choice) for value floors[j] + d
    #[derive(Clone)]
    enum Choice {
        Stop,
        Digit(BigInt, usize),
    }
    let mut best: Vec<[(BigInt, Choice); 2]> = Vec::with_capacity(levels);
    for _ in 0..levels {
        best.push([
            (BigInt::zero(), Choice::Stop),
            (BigInt::zero(), Choice::Stop),
        ]);
    }
    for j in (0..levels).rev() {
        for d in 0..2usize {
            let v = &floors[j] + BigInt::from(d);
            let mut cand = (v.abs(), Choice::Stop);
            if j + 1 < levels && !v.is_zero() {
                let r = v.mod_floor(base);
                let digits = if r.is_zero() {
                    vec![BigInt::zero()]
                } else {
                    vec![r.clone(), r - base]
                };
                for c in digits {
                    let next = (&v - &c) / base;
                    let nd = &next - &floors[j + 1];
                    let nd = match nd.to_i64() {
                        Some(0) => 0,
                        Some(1) => 1,
                        _ => continue,
                    };
                    let cost = c.abs() + 2u32 + &best[j + 1][nd].0;
                    if cost < cand.0 {
                        cand = (cost, Choice::Digit(c, nd));
                    }
                }
            }
            best[j][d] = cand;
        }
    }

    let mut w = Word::empty();
    let mut depth = 0i64;
    let (mut j, mut d) = (0usize, 0usize);
    loop {
        match &best[j][d].1 {
            Choice::Stop => {
                w.push(letter, &floors[j] + BigInt::from(d));
                break;
            }
            Choice::Digit(c, nd) => {
                w.push(letter, c.clone());
                w.push(conj, 1);
                depth += 1;
                d = *nd;
                j += 1;
            }
        }
    }
    w.push(conj, -depth);
    w
}

fn heisenberg_word(a: &BigInt, b: &BigInt, c: &BigInt) -> Word {
    // x^a y^b = u(a, b, ab); the rest is central
    let mut w = Word::empty();
    w.push(0, a.clone());
    w.push(1, b.clone());
    let d: BigInt = c - a * b;
    w.append(&central_word(&d));
    w
}

/// Word for the central element `z^d`, as `[x^p, y^q]` plus a short correction.
fn central_word(d: &BigInt) -> Word {
    if d.is_zero() {
        return Word::empty();
    }
    let n = d.abs();
    let p = n.sqrt();
    let q = &n / &p;
    let rem = &n - &p * &q;
    // [x^p, y^q] = z^{pq}, [y^q, x^p] = z^{−pq}
    let comm = |p: &BigInt, q: &BigInt| {
        let (first, second) = if d.is_positive() { (0, 1) } else { (1, 0) };
        let (e1, e2) = if d.is_positive() { (p, q) } else { (q, p) };
        let mut w = Word::empty();
        w.push(first, e1.clone());
        w.push(second, e2.clone());
        w.push(first, -e1);
        w.push(second, -e2);
        w
    };
    let mut w = comm(&p, &q);
    if !rem.is_zero() {
        w.append(&comm(&BigInt::one(), &rem));
    }
    w
}

/// Greedy expansion `v = Σ A^{s_j} u_j` with digits `u_j ∈ {−1, 0, 1}² ∖ {0}`.
///
/// Each step subtracts the candidate that minimises the squared norm of the
/// remainder. Taking `s = 0` and `u = sign(v)` always lowers the norm, so the
/// loop terminates; `cap` only guards against slow convergence. Terms of
/// equal height are merged and the heights visited in increasing order,
/// giving `t^{h₁} D₁ t^{h₂−h₁} D₂ ⋯ t^{−h_k}`.
pub fn sol_word(group: &Group, v: &[BigInt; 2], cap: usize) -> Option<Word> {
    let terms = sol_digits(group, v, cap)?;
    Some(sol_terms_word(&terms))
}

/// `(height, digit sum)` pairs of the greedy expansion, sorted by height.
pub fn sol_digits(group: &Group, v: &[BigInt; 2], cap: usize) -> Option<Vec<(i64, [BigInt; 2])>> {
    let a = group.sol_matrix()?;
    let mut rest = v.clone();
    let norm = |w: &[BigInt; 2]| &w[0] * &w[0] + &w[1] * &w[1];
    let lambda = spectral_radius(a);
    let mut terms: std::collections::BTreeMap<i64, [BigInt; 2]> = Default::default();
    let mut steps = 0;
    while !(rest[0].is_zero() && rest[1].is_zero()) {
        steps += 1;
        if steps > cap {
            return None;
        }
        let mag = norm(&rest).to_f64().unwrap_or(f64::MAX).sqrt().max(1.0);
        let reach = (mag.ln() / lambda.ln()).ceil() as i64 + 2;
        let mut best: Option<(BigInt, i64, [BigInt; 2])> = None;
        for h in -reach..=reach {
            let m = group.sol_power(h);
            let cols = [
                [m.0[0][0].clone(), m.0[1][0].clone()],
                [m.0[0][1].clone(), m.0[1][1].clone()],
            ];
            for u0 in -1i32..=1 {
                for u1 in -1i32..=1 {
                    if u0 == 0 && u1 == 0 {
                        continue;
                    }
                    let cand = [
                        &rest[0] - &cols[0][0] * u0 - &cols[1][0] * u1,
                        &rest[1] - &cols[0][1] * u0 - &cols[1][1] * u1,
                    ];
                    let n = norm(&cand);
                    if best.as_ref().is_none_or(|(bn, ..)| n < *bn) {
                        best = Some((n, h, [BigInt::from(u0), BigInt::from(u1)]));
                    }
                }
            }
        }
        let (_, h, u) = best.expect("at least one candidate");
        let col = group.sol_power(h).apply(&u);
        rest = [&rest[0] - &col[0], &rest[1] - &col[1]];
        let slot = terms
            .entry(h)
            .or_insert_with(|| [BigInt::zero(), BigInt::zero()]);
        slot[0] += &u[0];
        slot[1] += &u[1];
    }
    Some(
        terms
            .into_iter()
            .filter(|(_, d)| !(d[0].is_zero() && d[1].is_zero()))
            .collect(),
    )
}

fn sol_terms_word(terms: &[(i64, [BigInt; 2])]) -> Word {
    let mut w = Word::empty();
    let mut height = 0i64;
    for (h, d) in terms {
        w.push(2, h - height);
        height = *h;
        w.push(0, d[0].clone());
        w.push(1, d[1].clone());
    }
    w.push(2, -height);
    w
}

fn coordinate_sol_word(v: &[BigInt; 2]) -> Word {
    let mut w = Word::empty();
    w.push(0, v[0].clone());
    w.push(1, v[1].clone());
    w
}

/// `t^{−e} H(n) t^{e}` for the value `n / base^{e}`, with the conjugating
/// letter scaling the target by `base` per level.
fn scaled_horner(n: &BigInt, e: i64, base: &BigInt, letter: usize, conj: usize) -> Word {
    let mut w = Word::letter(conj, -e);
    w.append(&horner_word(n, base, letter, conj));
    w.push(conj, e);
    w
}

fn ut3lamp_word(p: u64, x: &MAdic, y: &MAdic, z: &MAdic, s: i64) -> Word {
    let bp = BigInt::from(p);
    let bp2 = &bp * &bp;
    // u(x,0,0) u(0,y,0) = u(x, y, xy), then the central correction
    let zc = z.sub(&x.mul(y, p), p);
    let mut w = scaled_horner(x.numerator(), i64::from(x.exponent()), &bp, 0, 3);
    w.append(&scaled_horner(y.numerator(), i64::from(y.exponent()), &bp, 1, 3));
    // z-denominator p^e: conjugate by d^{−f} with 2f ≥ e
    let e = zc.exponent();
    let f = e.div_ceil(2);
    let n = zc.numerator() * bp.pow(2 * f - e);
    w.append(&scaled_horner(&n, i64::from(f), &bp2, 2, 3));
    w.push(3, s);
    w
}

// ---------------------------------------------------------------- lower bounds

fn lower_bound(group: &Group, g: &GroupElement) -> Result<(u128, LowerWitness)> {
    if group.is_identity(g) {
        return Ok((0, LowerWitness::plain(LowerMethod::Identity)));
    }
    Ok(match (group.spec(), g) {
        (GroupSpec::FreeAbelian { .. }, GroupElement::FreeAbelian(v)) => {
            let n: BigInt = v.iter().map(|c| c.abs()).sum();
            (to_len(&n)?, LowerWitness::plain(LowerMethod::L1Norm))
        }
        (GroupSpec::Heisenberg, GroupElement::Heisenberg { a, b, c }) => {
            (heisenberg_lower(a, b, c)?, LowerWitness::plain(LowerMethod::Area))
        }
        (GroupSpec::BaumslagSolitar { m }, GroupElement::Bs { q, s }) => bs_lower(*m, q, *s)?,
        (GroupSpec::Sol { .. }, GroupElement::Sol { v, s }) => sol_lower(group, v, *s),
        (GroupSpec::Ut3Lamp { p }, GroupElement::Ut3Lamp { x, y, z, s }) => {
            ut3lamp_lower(*p, x, y, z, *s)?
        }
        _ => return Err(Error::FamilyMismatch(group.spec().family_name())),
    })
}

fn ceil_sqrt(n: &BigInt) -> BigInt {
    let s = n.sqrt();
    if &s * &s == *n {
        s
    } else {
        s + 1
    }
}

/// Lower bound in the Heisenberg group.
///
/// With `n_x` letters `x^{±1}`, the running `x`-coordinate never exceeds
/// `(n_x + |a|) / 2` in absolute value, and each `y`-letter moves `c` by that
/// coordinate, so `|c| ≤ (n_x + |a|) n_y / 2 ≤ (r + |a|)² / 8`. The mirror
/// argument on `c − ab` gives `(r + |b|)² ≥ 8 |c − ab|`.
fn heisenberg_lower(a: &BigInt, b: &BigInt, c: &BigInt) -> Result<u128> {
    let base = a.abs() + b.abs();
    let r1 = ceil_sqrt(&(c.abs() * 8u32)) - a.abs();
    let r2 = ceil_sqrt(&((c - a * b).abs() * 8u32)) - b.abs();
    let mut r = base.clone().max(r1).max(r2);
    // parity of the letter count matches a + b
    if (&r - &base).is_odd() {
        r += 1;
    }
    to_len(&r)
}

fn ceil_div(n: &BigInt, d: &BigInt) -> BigInt {
    n.div_ceil(d)
}

/// Minimise `ℓ + τ` over the top height `H⁺`, where `ℓ = letters(H⁺)` and
/// `τ = 2H⁺ + 2H⁻ − |s|` with `H⁻` fixed.
fn height_profile(
    s: i64,
    down: u64,
    max_up: u64,
    letters: impl Fn(u64) -> BigInt,
) -> Result<(u128, LowerWitness)> {
    let up0 = s.max(0) as u64;
    let down = down.max((-s).max(0) as u64);
    let mut best: Option<(BigInt, u64)> = None;
    for up in up0..=max_up.max(up0) {
        let tau = BigInt::from(2 * up + 2 * down) - BigInt::from(s.unsigned_abs());
        if let Some((b, _)) = &best {
            if &tau >= b {
                break;
            }
        }
        let total = letters(up) + tau;
        if best.as_ref().is_none_or(|(b, _)| &total < b) {
            best = Some((total, up));
        }
    }
    let (total, up) = best.expect("nonempty range");
    Ok((
        to_len(&total)?,
        LowerWitness {
            method: LowerMethod::HeightProfile,
            heights: Some((up, down)),
        },
    ))
}

/// A word for `(q, s)` whose `t`-height stays in `[−H⁻, H⁺]` satisfies
/// `|q| ≤ ℓ m^{H⁺}`, needs `H⁻ ≥ e` to produce the denominator `m^e`, and
/// uses at least `2H⁺ + 2H⁻ − |s|` letters `t^{±1}`.
fn bs_lower(m: u64, q: &MAdic, s: i64) -> Result<(u128, LowerWitness)> {
    let base = BigInt::from(m);
    let num = q.numerator().abs();
    let e = q.exponent();
    let max_up = num.bits() + 2;
    height_profile(s, u64::from(e), max_up, |up| {
        if num.is_zero() {
            return BigInt::zero();
        }
        // |n| / m^e ≤ ℓ m^{H⁺}
        ceil_div(&num, &base.pow(e + up as u32)).max(BigInt::one())
    })
}

/// Eigen-functionals of `A`: an expanding `ξ_u` and a contracting `ξ_s`.
/// The letter at height `h` changes `ξ_u(v)` by at most `c_u λ^h` and
/// `ξ_s(v)` by at most `c_s λ^{−h}`, with `c = max_i |ξ(e_i)|`.
fn sol_lower(group: &Group, v: &[BigInt; 2], s: i64) -> (u128, LowerWitness) {
    let a = group.sol_matrix().expect("sol family");
    let lambda = spectral_radius(a);
    let (xi_u, xi_s) = left_eigenvectors(a, lambda);
    let vf = [
        v[0].to_f64().unwrap_or(f64::MAX),
        v[1].to_f64().unwrap_or(f64::MAX),
    ];
    let nonzero = !(v[0].is_zero() && v[1].is_zero());
    let val = |xi: [f64; 2]| (xi[0] * vf[0] + xi[1] * vf[1]).abs();
    let c = |xi: [f64; 2]| xi[0].abs().max(xi[1].abs());
    let (fu, cu) = (val(xi_u), c(xi_u));
    let (fs, cs) = (val(xi_s), c(xi_s));
    // shave a relative 1e-9 before rounding up, so float error never overstates
    let need = |f: f64, c: f64, h: u64| -> u128 {
        let r = f / (c * lambda.powi(h as i32)) * (1.0 - 1e-9);
        r.ceil().max(0.0) as u128
    };
    let up0 = s.max(0) as u64;
    let down0 = (-s).max(0) as u64;
    let max_h = |f: f64, c: f64| ((f / c).max(1.0).ln() / lambda.ln()).ceil() as u64 + 2;
    let (mu, md) = (max_h(fu, cu).max(up0), max_h(fs, cs).max(down0));
    let mut best = (u128::MAX, 0, 0);
    for up in up0..=mu {
        for down in down0..=md {
            let tau = (2 * up + 2 * down) as u128 - u128::from(s.unsigned_abs());
            if tau >= best.0 {
                break;
            }
            let mut l = need(fu, cu, up).max(need(fs, cs, down));
            if nonzero {
                l = l.max(1);
            }
            if l + tau < best.0 {
                best = (l + tau, up, down);
            }
        }
    }
    (
        best.0,
        LowerWitness {
            method: LowerMethod::HeightProfile,
            heights: Some((best.1, best.2)),
        },
    )
}

pub(crate) fn spectral_radius(a: &Mat2) -> f64 {
    let tr = (&a.0[0][0] + &a.0[1][1]).to_f64().unwrap();
    let det = (&a.0[0][0] * &a.0[1][1] - &a.0[0][1] * &a.0[1][0])
        .to_f64()
        .unwrap();
    let disc = (tr * tr - 4.0 * det).sqrt();
    ((tr.abs() + disc) / 2.0).abs()
}

/// Left eigenvectors for the eigenvalues of modulus `λ` and `1/λ`, normalised.
fn left_eigenvectors(a: &Mat2, lambda: f64) -> ([f64; 2], [f64; 2]) {
    let f = |x: &BigInt| x.to_f64().unwrap();
    let (a11, a12, a21, a22) = (f(&a.0[0][0]), f(&a.0[0][1]), f(&a.0[1][0]), f(&a.0[1][1]));
    let tr = a11 + a22;
    let det = a11 * a22 - a12 * a21;
    let mu_big = if tr >= 0.0 { lambda } else { -lambda };
    let mu_small = det / mu_big;
    // ξ A = μ ξ  ⇔  ξ (A − μ) = 0; take ξ ⟂ the first column of A − μ
    let left = |mu: f64| {
        let (c1, c2) = (a11 - mu, a21);
        let (d1, d2) = (a12, a22 - mu);
        let xi = if c1.abs() + c2.abs() >= d1.abs() + d2.abs() {
            [-c2, c1]
        } else {
            [-d2, d1]
        };
        let n = (xi[0] * xi[0] + xi[1] * xi[1]).sqrt();
        [xi[0] / n, xi[1] / n]
    };
    (left(mu_big), left(mu_small))
}

/// The `ut3lamp` word with `ℓ` letters from `{x, y, z}` and height in
/// `[−H⁻, H⁺]` has `|x|, |y| ≤ ℓ p^{H⁺}` and `|z| ≤ (ℓ + ℓ²/4) p^{2H⁺}`.
/// Denominators `p^e` in `x` or `y` force `H⁻ ≥ e`, and in `z` force
/// `2H⁻ ≥ e`.
fn ut3lamp_lower(p: u64, x: &MAdic, y: &MAdic, z: &MAdic, s: i64) -> Result<(u128, LowerWitness)> {
    let bp = BigInt::from(p);
    let down = u64::from(x.exponent())
        .max(u64::from(y.exponent()))
        .max(u64::from(z.exponent().div_ceil(2)));
    let nonzero = !(x.is_zero() && y.is_zero() && z.is_zero());
    let max_up = x.numerator().bits().max(y.numerator().bits()).max(z.numerator().bits()) + 2;
    height_profile(s, down, max_up, |up| {
        let up = up as u32;
        let lin = |c: &MAdic| ceil_div(&c.numerator().abs(), &bp.pow(up + c.exponent()));
        // smallest ℓ with ℓ² + 4ℓ ≥ 4|z| / p^{2H⁺}
        let r = ceil_div(
            &(z.numerator().abs() * 4u32),
            &bp.pow(2 * up + z.exponent()),
        );
        let lz = (ceil_sqrt(&(r + 4u32)) - 2u32).max(BigInt::zero());
        let mut l = lin(x).max(lin(y)).max(lz);
        if nonzero && l.sign() == Sign::NoSign {
            l = BigInt::one();
        }
        l
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::ball::ball;

    fn interval(g: &Group, x: &GroupElement) -> LengthInterval {
        let iv = word_length_bounds(g, x).unwrap();
        assert_eq!(&g.evaluate_word(&iv.upper_witness).unwrap(), x);
        assert_eq!(iv.upper_witness.len(), BigInt::from(iv.upper));
        assert!(iv.lower <= iv.upper);
        iv
    }

    #[test]
    fn bs_examples() {
        let g = Group::parse("bs:1:2").unwrap();
        let iv = interval(&g, &GroupElement::bs(8, 0));
        assert_eq!(iv.upper, 6);
        assert!(iv.lower >= 2);
        for j in 0..20u32 {
            let iv = interval(&g, &GroupElement::bs(1 << j, 0));
            assert!(iv.upper <= 2 * u128::from(j) + 1);
        }
    }

    #[test]
    fn ut3lamp_examples() {
        let g = Group::parse("ut3lamp:2").unwrap();
        for j in 0..12u32 {
            let iv = interval(&g, &GroupElement::ut3lamp(0, 0, 1 << (2 * j), 0));
            assert!(iv.upper <= 2 * u128::from(j) + 1, "j = {j}: {}", iv.upper);
        }
    }

    #[test]
    fn words_evaluate_for_every_family() {
        let cases = [
            ("z:3", vec![GroupElement::free_abelian(&[3, -4, 0])]),
            (
                "heis",
                vec![
                    GroupElement::heisenberg(0, 0, 1),
                    GroupElement::heisenberg(2, -3, 17),
                    GroupElement::heisenberg(-5, 1, -40),
                ],
            ),
            (
                "bs:1:3",
                vec![GroupElement::bs(-100, 3), GroupElement::bs(7, -2)],
            ),
            (
                "sol",
                vec![GroupElement::sol(1000, -77, 2), GroupElement::sol(-3, 5, -4)],
            ),
            (
                "ut3lamp:3",
                vec![GroupElement::ut3lamp(4, -7, 100, 1), GroupElement::ut3lamp(0, 0, -81, -2)],
            ),
        ];
        for (spec, elems) in cases {
            let g = Group::parse(spec).unwrap();
            for x in elems {
                interval(&g, &x);
            }
        }
        // fractional coordinates
        let g = Group::parse("ut3lamp:2").unwrap();
        let x = g.evaluate("d^-3 x y^2 d z d^-1 y d^2").unwrap();
        interval(&g, &x);
        let b = Group::parse("bs:1:2").unwrap();
        let x = b.evaluate("t^-4 a^3 t^2 a t^-1").unwrap();
        interval(&b, &x);
    }

    #[test]
    fn bounds_bracket_bfs_lengths() {
        for (spec, radius) in [("bs:1:2", 7), ("heis", 7), ("sol", 5), ("ut3lamp:2", 4), ("z:2", 6)] {
            let g = Group::parse(spec).unwrap();
            let b = ball(&g, radius, 2_000_000).unwrap();
            for (x, &len) in b.elements().iter().zip(b.lengths()) {
                let iv = interval(&g, x);
                assert!(
                    iv.lower <= len as u128 && len as u128 <= iv.upper,
                    "{spec} {}: {} ≤ {len} ≤ {}",
                    g.format_element(x),
                    iv.lower,
                    iv.upper
                );
            }
        }
    }

    #[test]
    fn horner_dp_is_optimal_among_horner_words() {
        // brute force over signed-digit expansions for small n
        fn brute(n: i64, m: i64, depth: u32) -> i64 {
            let mut best = n.abs();
            if depth == 0 || n == 0 {
                return best;
            }
            let r = n.rem_euclid(m);
            for c in [r, r - m] {
                if c == r - m && r == 0 {
                    continue;
                }
                best = best.min(c.abs() + 2 + brute((n - c) / m, m, depth - 1));
            }
            best
        }
        for m in [2i64, 3, 5] {
            for n in -300..=300 {
                let w = horner_word(&BigInt::from(n), &BigInt::from(m), 0, 1);
                assert_eq!(w.len(), BigInt::from(brute(n, m, 20)), "m = {m}, n = {n}");
            }
        }
    }

    #[test]
    fn heisenberg_central_words() {
        assert_eq!(central_word(&BigInt::from(1)).len(), BigInt::from(4));
        assert_eq!(central_word(&BigInt::from(16)).len(), BigInt::from(16));
        assert_eq!(heisenberg_lower(&0.into(), &0.into(), &1.into()).unwrap(), 4);
    }
}
