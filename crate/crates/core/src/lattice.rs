//! Integer lattices: exact LLL, integer relations, Hermite and Smith normal
//! forms, saturation, minimal polynomials of approximated algebraic numbers,
//! and the Minkowski bound on finite subgroups of `GL_n(Z)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bigfloat::{round_to_int, BigComplex, ComplexField, Real};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// Integer row vectors; rows are the lattice generators.
pub type IntMatrix = Matrix<BigInt>;

pub fn default_delta() -> BigRational {
    BigRational::new(99.into(), 100.into())
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Nearest integer to `a / b` for `b > 0`, ties rounding up.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let num: BigInt = a * 2u32 + b;
    num.div_floor(&(b * 2u32))
}

/// LLL reduction with exact integer Gram–Schmidt data.
///
/// `d[i]` is the Gram determinant of the first `i` vectors and `lam[i][j]`
/// is `d[j+1] * mu[i][j]`, both integers throughout.
pub fn lll_reduce(basis: &IntMatrix, delta: &BigRational) -> Result<IntMatrix> {
    let one = BigRational::one();
    if *delta <= BigRational::new(1.into(), 4.into()) || *delta >= one {
        return Err(Error::Invalid("delta must lie in (1/4, 1)".into()));
    }
    let (p, q) = (delta.numer().clone(), delta.denom().clone());
    let n = basis.len();
    let mut b = basis.clone();
    if n == 0 {
        return Ok(b);
    }
    let mut d = vec![BigInt::zero(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n]; n];
    d[0] = BigInt::one();
    d[1] = dot(&b[0], &b[0]);
    if d[1].is_zero() {
        return Err(Error::DependentRows);
    }
    let mut k = 1;
    let mut kmax = 0;

    // size-reduce b_k against b_l
    fn red(b: &mut IntMatrix, lam: &mut [Vec<BigInt>], d: &[BigInt], k: usize, l: usize) {
        let dl = &d[l + 1];
        if (&lam[k][l] * 2u32).abs() > *dl {
            let r = round_div(&lam[k][l], dl);
            let bl = b[l].clone();
            for (x, y) in b[k].iter_mut().zip(&bl) {
                *x -= &r * y;
            }
            lam[k][l] -= &r * dl;
            for i in 0..l {
                let t = &r * &lam[l][i];
                lam[k][i] -= t;
            }
        }
    }

    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&b[k], &b[j]);
                for i in 0..j {
                    u = (&d[i + 1] * &u - &lam[k][i] * &lam[j][i]) / &d[i];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    if u.is_zero() {
                        return Err(Error::DependentRows);
                    }
                    d[k + 1] = u;
                }
            }
        }
        red(&mut b, &mut lam, &d, k, k - 1);
        let l2 = &lam[k][k - 1] * &lam[k][k - 1];
        let lhs = &q * (&d[k + 1] * &d[k - 1] + &l2);
        let rhs = &p * &d[k] * &d[k];
        if lhs < rhs {
            // swap b_{k-1} and b_k
            b.swap(k, k - 1);
            for j in 0..k - 1 {
                let t = lam[k][j].clone();
                lam[k][j] = std::mem::replace(&mut lam[k - 1][j], t);
            }
            let lk = lam[k][k - 1].clone();
            let bb = (&d[k - 1] * &d[k + 1] + &lk * &lk) / &d[k];
            for i in k + 1..=kmax {
                let t = lam[i][k].clone();
                lam[i][k] = (&d[k + 1] * &lam[i][k - 1] - &lk * &t) / &d[k];
                lam[i][k - 1] = (&bb * &t + &lk * &lam[i][k]) / &d[k + 1];
            }
            d[k] = bb;
            if k > 1 {
                k -= 1;
            }
        } else {
            for l in (0..k - 1).rev() {
                red(&mut b, &mut lam, &d, k, l);
            }
            k += 1;
        }
    }
    Ok(b)
}

/// Rational Gram–Schmidt check of size reduction and the Lovász condition.
pub fn is_lll_reduced(b: &IntMatrix, delta: &BigRational) -> bool {
    let n = b.len();
    let to_q = |v: &[BigInt]| v.iter().map(|x| BigRational::from_integer(x.clone())).collect::<Vec<_>>();
    let qdot = |a: &[BigRational], c: &[BigRational]| a.iter().zip(c).map(|(x, y)| x * y).sum::<BigRational>();
    let mut star: Vec<Vec<BigRational>> = Vec::new();
    let mut norms: Vec<BigRational> = Vec::new();
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let half = BigRational::new(1.into(), 2.into());
    for i in 0..n {
        let bi = to_q(&b[i]);
        let mut v = bi.clone();
        for j in 0..i {
            mu[i][j] = qdot(&bi, &star[j]) / &norms[j];
            if mu[i][j].abs() > half {
                return false;
            }
            for (x, y) in v.iter_mut().zip(&star[j]) {
                *x -= &mu[i][j] * y;
            }
        }
        let nv = qdot(&v, &v);
        if nv.is_zero() {
            return false;
        }
        star.push(v);
        norms.push(nv);
    }
    (1..n).all(|k| norms[k] >= (delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1])
}

/// One accepted integer relation.
#[derive(Clone, Debug)]
pub struct Relation {
    pub coeffs: Vec<BigInt>,
    /// Largest residual `|sum v_i x_i|` over the constraints, relative to each
    /// constraint's largest entry.
    pub residual: Real,
}

#[derive(Clone, Debug)]
pub struct RelationConfig {
    /// Decimal digits withheld from the scaling, absorbing rounding noise.
    pub guard: usize,
    pub delta: BigRational,
    /// Largest admissible coefficient; derived from the expected size of
    /// spurious relations when absent.
    pub bound: Option<BigInt>,
}

impl Default for RelationConfig {
    fn default() -> Self {
        RelationConfig {
            guard: 10,
            delta: default_delta(),
            bound: None,
        }
    }
}

/// Square root of the typical coefficient size of a spurious relation:
/// `10^(p c / (2 dim))` with `p` scaled digits and `c` real constraints.
pub fn default_bound(dim: usize, constraints: usize, scaled_digits: usize) -> BigInt {
    let e = (scaled_digits * constraints) as f64 / (2.0 * dim as f64);
    if e < 300.0 {
        let v = 10f64.powf(e);
        if v < 1e18 {
            return BigInt::from(v.ceil() as u64);
        }
    }
    BigInt::from(10u32).pow(e.ceil() as u32)
}

/// Integer relations among `values`; see [`simultaneous_relations`].
pub fn integer_relation(values: &[BigComplex], digits: usize, bound: Option<&BigInt>) -> Result<Vec<Relation>> {
    let cfg = RelationConfig {
        bound: bound.cloned(),
        ..RelationConfig::default()
    };
    simultaneous_relations(&[values.to_vec()], digits, &cfg)
}

/// Integer vectors `v` with `sum_i v_i c_i ~ 0` for every constraint vector
/// `c`, found by LLL on `[I | round(10^(digits-g) Re c) | round(.. Im c)]`.
/// Each constraint is first normalised by its largest entry. The scaling is
/// raised in stages, carrying the unimodular transform forward, so that the
/// final exact reduction starts from a nearly reduced basis.
pub fn simultaneous_relations(constraints: &[Vec<BigComplex>], digits: usize, cfg: &RelationConfig) -> Result<Vec<Relation>> {
    let dim = constraints.first().map_or(0, |c| c.len());
    if dim == 0 || constraints.iter().any(|c| c.len() != dim) {
        return Err(Error::Invalid("constraint vectors must be nonempty and of equal length".into()));
    }
    if digits <= cfg.guard + 2 {
        return Err(Error::Precision(format!("{digits} digits leave nothing beyond the guard")));
    }
    let cf = ComplexField::with_digits(digits);
    let scaled_digits = digits - cfg.guard;

    // normalised real columns
    let mut columns: Vec<Vec<Real>> = Vec::new();
    let mut maxabs: Vec<Real> = Vec::new();
    for c in constraints {
        let c: Vec<BigComplex> = c.iter().map(|z| cf.coerce(z)).collect();
        let m = c.iter().map(|z| cf.abs(z)).fold(cf.real_from_int(&BigInt::zero()), |a, b| if b > a { b } else { a });
        maxabs.push(m.clone());
        if m == cf.real_from_int(&BigInt::zero()) {
            continue;
        }
        let re: Vec<Real> = c.iter().map(|z| cf.rdiv(&z.re, &m)).collect();
        let im: Vec<Real> = c.iter().map(|z| cf.rdiv(&z.im, &m)).collect();
        let zero = cf.real_from_int(&BigInt::zero());
        if re.iter().any(|x| *x != zero) {
            columns.push(re);
        }
        if im.iter().any(|x| *x != zero) {
            columns.push(im);
        }
    }
    let bound = cfg
        .bound
        .clone()
        .unwrap_or_else(|| default_bound(dim, columns.len().max(1), scaled_digits));

    let mut u: IntMatrix = (0..dim)
        .map(|i| (0..dim).map(|j| BigInt::from((i == j) as u8)).collect())
        .collect();
    if !columns.is_empty() {
        let step = 40usize;
        let mut p = step.min(scaled_digits);
        loop {
            let scale = cf.pow10(p as i64);
            let ints: Vec<Vec<BigInt>> = columns
                .iter()
                .map(|col| col.iter().map(|x| round_to_int(&cf.rmul(x, &scale))).collect())
                .collect();
            let rows: IntMatrix = u
                .iter()
                .map(|row| {
                    let mut r = row.clone();
                    for col in &ints {
                        r.push(dot(row, col));
                    }
                    r
                })
                .collect();
            let reduced = lll_reduce(&rows, &cfg.delta)?;
            u = reduced.into_iter().map(|mut r| {
                r.truncate(dim);
                r
            }).collect();
            if p == scaled_digits {
                break;
            }
            p = (p + step).min(scaled_digits);
        }
    }

    let threshold = cf.pow10(-((digits / 2) as i64));
    let mut out = Vec::new();
    for row in u {
        if row.iter().all(|x| x.is_zero()) || row.iter().any(|x| x.abs() > bound) {
            continue;
        }
        let mut worst = cf.real_from_int(&BigInt::zero());
        let mut ok = true;
        for (c, m) in constraints.iter().zip(&maxabs) {
            let s = c.iter().zip(&row).fold(cf.zero(), |acc, (z, v)| {
                cf.add(&acc, &cf.mul(z, &cf.from_real(cf.real_from_int(v))))
            });
            let r = cf.abs(&s);
            let zero = cf.real_from_int(&BigInt::zero());
            let rel = if *m == zero { r.clone() } else { cf.rdiv(&r, m) };
            if rel >= threshold {
                ok = false;
                break;
            }
            if rel > worst {
                worst = rel;
            }
        }
        if ok {
            out.push(Relation {
                coeffs: row,
                residual: worst,
            });
        }
    }
    Ok(out)
}

/// An algebraic number given by its minimal polynomial (integer
/// coefficients, ascending, primitive, positive leading coefficient) and an
/// approximation of the intended root.
#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    pub minpoly: Vec<BigInt>,
    pub approx: BigComplex,
    pub digits: usize,
    /// `|m(approx)|` divided by the largest `|c_i approx^i|`.
    pub residual: Real,
}

impl AlgebraicNumber {
    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    /// Radius of a disk about `approx` containing exactly this root of the
    /// minimal polynomial.
    pub fn isolation_radius(&self) -> Result<f64> {
        crate::numfield::isolation_radius(&self.minpoly, &self.approx, self.digits)
    }

    /// Renders the minimal polynomial in `t`, highest degree first.
    pub fn render(&self) -> String {
        crate::numfield::UniPoly::from_ints(&self.minpoly).render("t")
    }
}

fn normalise_poly(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.len() > 1 && v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    if v.last().is_some_and(|x| x.is_negative()) {
        for x in v.iter_mut() {
            *x = -&*x;
        }
    }
    v
}

/// Least-degree integer polynomial vanishing at `x` to the residual
/// threshold, searching degrees `1..=maxdeg`. Irreducibility is not checked:
/// the first relation found is returned, which is minimal up to the
/// precision's ability to exclude lower-degree relations.
pub fn min_poly(x: &BigComplex, maxdeg: usize, digits: usize) -> Result<AlgebraicNumber> {
    min_poly_with(x, maxdeg, digits, &RelationConfig::default())
}

pub fn min_poly_with(x: &BigComplex, maxdeg: usize, digits: usize, cfg: &RelationConfig) -> Result<AlgebraicNumber> {
    let cf = ComplexField::with_digits(digits);
    let x = cf.coerce(x);
    let mut powers = vec![cf.one()];
    for k in 1..=maxdeg {
        let next = cf.mul(&powers[k - 1], &x);
        powers.push(next);
        let rels = simultaneous_relations(&[powers.clone()], digits, cfg)?;
        let best = rels
            .into_iter()
            .filter(|r| !r.coeffs[k].is_zero())
            .min_by_key(|r| r.coeffs.iter().map(|c| c.abs()).max());
        if let Some(r) = best {
            let minpoly = normalise_poly(r.coeffs);
            return Ok(AlgebraicNumber {
                minpoly,
                approx: x,
                digits,
                residual: r.residual,
            });
        }
    }
    Err(Error::NoRelation(format!(
        "no polynomial of degree <= {maxdeg} found at {digits} digits; raise the precision or the degree"
    )))
}

/// Writes `y` as `sum c_i alpha^i`, `i < deg alpha`, with rational `c_i`.
/// `None` means no such expression was found, so `y` is probably not in
/// `Q(alpha)` or needs more precision.
pub fn express_in_field(y: &BigComplex, alpha: &AlgebraicNumber, digits: usize) -> Result<Option<(Vec<BigRational>, Real)>> {
    express_in_field_with(y, alpha, digits, &RelationConfig::default())
}

pub fn express_in_field_with(
    y: &BigComplex,
    alpha: &AlgebraicNumber,
    digits: usize,
    cfg: &RelationConfig,
) -> Result<Option<(Vec<BigRational>, Real)>> {
    let cf = ComplexField::with_digits(digits);
    let a = cf.coerce(&alpha.approx);
    let mut vals = vec![cf.coerce(y), cf.one()];
    for i in 1..alpha.degree() {
        let next = cf.mul(&vals[i], &a);
        vals.push(next);
    }
    let rels = simultaneous_relations(&[vals], digits, cfg)?;
    let Some(r) = rels
        .into_iter()
        .filter(|r| !r.coeffs[0].is_zero())
        .min_by_key(|r| r.coeffs.iter().map(|c| c.abs()).max())
    else {
        return Ok(None);
    };
    let v0 = BigRational::from_integer(r.coeffs[0].clone());
    let cs = r.coeffs[1..]
        .iter()
        .map(|c| -BigRational::from_integer(c.clone()) / &v0)
        .collect();
    Ok(Some((cs, r.residual)))
}

/// Row Hermite normal form with transform: returns `(H, U, rank)` with
/// `U * A = H`, `U` unimodular, the first `rank` rows of `H` in echelon form
/// with positive pivots and entries above each pivot reduced into
/// `[0, pivot)`, and the remaining rows zero.
pub fn hnf_with_transform(a: &IntMatrix, ncols: usize) -> (IntMatrix, IntMatrix, usize) {
    let m = a.len();
    let mut h = a.clone();
    let mut u: IntMatrix = (0..m)
        .map(|i| (0..m).map(|j| BigInt::from((i == j) as u8)).collect())
        .collect();
    let sub_row = |h: &mut IntMatrix, i: usize, r: usize, q: &BigInt| {
        if q.is_zero() {
            return;
        }
        let hr = h[r].clone();
        for (x, y) in h[i].iter_mut().zip(&hr) {
            *x -= q * y;
        }
    };
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        loop {
            let piv = (r..m)
                .filter(|&i| !h[i][c].is_zero())
                .min_by_key(|&i| h[i][c].abs());
            let Some(piv) = piv else { break };
            h.swap(r, piv);
            u.swap(r, piv);
            let mut done = true;
            for i in r + 1..m {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                sub_row(&mut h, i, r, &q);
                sub_row(&mut u, i, r, &q);
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(r).map_or(true, |row| row[c].is_zero()) {
            continue;
        }
        if h[r][c].is_negative() {
            for x in h[r].iter_mut().chain(u[r].iter_mut()) {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            sub_row(&mut h, i, r, &q);
            sub_row(&mut u, i, r, &q);
        }
        r += 1;
    }
    (h, u, r)
}

/// Row Hermite normal form of the lattice spanned by the rows (zero rows
/// dropped).
pub fn hnf(a: &IntMatrix, ncols: usize) -> IntMatrix {
    let (mut h, _, r) = hnf_with_transform(a, ncols);
    h.truncate(r);
    h
}

/// Basis of `{x in Z^m : x A = 0}` for an `m x ncols` matrix `A`.
pub fn integer_left_kernel(a: &IntMatrix, ncols: usize) -> IntMatrix {
    let (_, u, r) = hnf_with_transform(a, ncols);
    u.into_iter().skip(r).collect()
}

fn transpose(a: &IntMatrix, ncols: usize) -> IntMatrix {
    (0..ncols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Intersection of the rational span of the rows with `Z^ncols`, in HNF.
pub fn saturate(l: &IntMatrix, ncols: usize) -> IntMatrix {
    // orthogonal complement, then its orthogonal complement
    let perp = integer_left_kernel(&transpose(l, ncols), l.len());
    let sat = integer_left_kernel(&transpose(&perp, ncols), perp.len());
    hnf(&sat, ncols)
}

/// Same subgroup of `Z^ncols`.
pub fn same_lattice(a: &IntMatrix, b: &IntMatrix, ncols: usize) -> bool {
    hnf(a, ncols) == hnf(b, ncols)
}

/// Nonzero elementary divisors, computed by alternating row and column
/// elimination.
pub fn smith_diagonal(a: &IntMatrix, ncols: usize) -> Vec<BigInt> {
    let mut m = a.clone();
    let nrows = m.len();
    let mut out = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !m[i][j].is_zero() && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let p = m[t][t].clone();
            let mut clean = true;
            for i in t + 1..nrows {
                let q = m[i][t].div_floor(&p);
                if !q.is_zero() {
                    let rt = m[t].clone();
                    for (x, y) in m[i].iter_mut().zip(&rt) {
                        *x -= &q * y;
                    }
                }
                if !m[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..ncols {
                let q = m[t][j].div_floor(&p);
                if !q.is_zero() {
                    for row in m.iter_mut() {
                        let v = &q * &row[t];
                        row[j] -= v;
                    }
                }
                if !m[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // the pivot must divide the rest of the block
                let bad = (t + 1..nrows)
                    .flat_map(|i| (t + 1..ncols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&m[i][j] % &p).is_zero());
                match bad {
                    None => break,
                    Some((i, _)) => {
                        let ri = m[i].clone();
                        for (x, y) in m[t].iter_mut().zip(&ri) {
                            *x += y;
                        }
                    }
                }
            }
            // move the smallest entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t..nrows {
                if !m[i][t].is_zero() && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..ncols {
                if !m[t][j].is_zero() && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            m.swap(t, best.0);
            for row in m.iter_mut() {
                row.swap(t, best.1);
            }
        }
        out.push(m[t][t].abs());
        t += 1;
    }
    out
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(a: &IntMatrix) -> BigInt {
    let n = a.len();
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &m[n - 1][n - 1]
}

/// Minkowski's bound `M(n) = prod_p p^(sum_k floor(n / (p^k (p - 1))))` over
/// primes `p <= n + 1`; every finite subgroup of `GL_n(Z)` has order
/// dividing it.
pub fn minkowski_bound(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for p in 2..=n + 1 {
        if !(2..p).take_while(|k| k * k <= p).all(|k| p % k != 0) {
            continue;
        }
        let mut e = 0u64;
        let mut pk = 1u64;
        loop {
            let t = n / (pk * (p - 1));
            if t == 0 {
                break;
            }
            e += t;
            pk *= p;
        }
        acc *= BigInt::from(p).pow(e as u32);
    }
    acc
}

/// Converts a small integer matrix literal.
pub fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Largest absolute entry as `f64`, for diagnostics.
pub fn max_abs_f64(v: &[BigInt]) -> f64 {
    v.iter().map(|x| x.abs().to_f64().unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigfloat::parse_decimal;
    use proptest::prelude::*;

    fn cf(d: usize) -> ComplexField {
        ComplexField::with_digits(d)
    }

    #[test]
    fn lll_examples() {
        let id = int_matrix(&[&[1, 0], &[0, 1]]);
        assert_eq!(lll_reduce(&id, &default_delta()).unwrap(), id);
        let r1 = int_matrix(&[&[2, 4]]);
        assert_eq!(lll_reduce(&r1, &default_delta()).unwrap(), r1);
        let dep = int_matrix(&[&[1, 2], &[2, 4]]);
        assert_eq!(lll_reduce(&dep, &default_delta()).unwrap_err(), Error::DependentRows);
    }

    #[test]
    fn lll_knapsack_against_brute_force() {
        let b = int_matrix(&[&[1, 0, 0, 1234567], &[0, 1, 0, 2345678], &[0, 0, 1, 3456789]]);
        let r = lll_reduce(&b, &default_delta()).unwrap();
        assert!(is_lll_reduced(&r, &default_delta()));
        assert!(same_lattice(&b, &r, 4));
        let norm = |v: &[BigInt]| dot(v, v);
        // brute-force shortest vector over a coefficient box
        let mut best: Option<BigInt> = None;
        let k = 60i64;
        for a in -k..=k {
            for c in -k..=k {
                for e in -k..=k {
                    if (a, c, e) == (0, 0, 0) {
                        continue;
                    }
                    let v: Vec<BigInt> = (0..4)
                        .map(|j| BigInt::from(a) * &b[0][j] + BigInt::from(c) * &b[1][j] + BigInt::from(e) * &b[2][j])
                        .collect();
                    let nv = norm(&v);
                    if best.as_ref().map_or(true, |x| nv < *x) {
                        best = Some(nv);
                    }
                }
            }
        }
        // |b1|^2 <= 2^(k-1) lambda_1^2 with k = 3
        assert!(norm(&r[0]) <= best.unwrap() * 4);
    }

    #[test]
    fn golden_ratio_relation() {
        let c = cf(50);
        let five = c.real_from_int(&5.into());
        let phi = c.rdiv(&c.radd(&c.real_from_int(&1.into()), &c.rsqrt(&five)), &c.real_from_int(&2.into()));
        let phi = c.from_real(phi);
        let vals = vec![c.one(), phi.clone(), c.mul(&phi, &phi)];
        let rels = integer_relation(&vals, 50, None).unwrap();
        assert_eq!(rels.len(), 1);
        let v = &rels[0].coeffs;
        let sign = if v[0].is_negative() { -1 } else { 1 };
        let v: Vec<i64> = v.iter().map(|x| x.to_i64().unwrap() * sign).collect();
        assert_eq!(v, vec![1, 1, -1]);
    }

    #[test]
    fn sqrt_two_has_no_linear_relation() {
        let c = cf(50);
        let s = c.from_real(c.rsqrt(&c.real_from_int(&2.into())));
        let rels = integer_relation(&[c.one(), s], 50, Some(&BigInt::from(1_000_000))).unwrap();
        assert!(rels.is_empty());
    }

    #[test]
    fn planted_relation() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let c = cf(30);
        let mut r: Vec<BigComplex> = (0..4)
            .map(|_| {
                let digits: String = (0..30).map(|_| char::from(b'0' + rng.gen_range(0..10u8))).collect();
                let q = parse_decimal(&format!("0.{digits}")).unwrap();
                c.complex(&q, &BigRational::zero())
            })
            .collect();
        let r5 = c.sub(&c.mul(&c.from_int(3), &r[0]), &c.mul(&c.from_int(2), &r[2]));
        r.push(r5);
        let rels = integer_relation(&r, 30, None).unwrap();
        assert_eq!(rels.len(), 1);
        let v: Vec<i64> = rels[0].coeffs.iter().map(|x| x.to_i64().unwrap()).collect();
        let v = if v[0] < 0 { v.iter().map(|x| -x).collect() } else { v };
        assert_eq!(v, vec![3, 0, -2, 0, -1]);
    }

    #[test]
    fn min_poly_examples() {
        let c = cf(50);
        let s = c.from_real(c.rsqrt(&c.real_from_int(&2.into())));
        let a = min_poly(&s, 4, 50).unwrap();
        assert_eq!(a.minpoly, vec![BigInt::from(-2), 0.into(), 1.into()]);
        let half = c.complex(&BigRational::new(1.into(), 2.into()), &BigRational::zero());
        let a = min_poly(&half, 3, 50).unwrap();
        assert_eq!(a.minpoly, vec![BigInt::from(-1), 2.into()]);
        assert_eq!(a.render(), "2*t - 1");
    }

    #[test]
    fn express_golden_ratio_over_sqrt5() {
        let c = cf(60);
        let s5 = c.from_real(c.rsqrt(&c.real_from_int(&5.into())));
        let alpha = min_poly(&s5, 2, 60).unwrap();
        let y = c.mul(&c.add(&c.one(), &s5), &c.from_rational(&BigRational::new(1.into(), 2.into())));
        let (cs, _) = express_in_field(&y, &alpha, 60).unwrap().unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(cs, vec![half.clone(), half]);
        let sq = c.mul(&s5, &s5);
        let (cs, _) = express_in_field(&sq, &alpha, 60).unwrap().unwrap();
        assert_eq!(cs, vec![BigRational::from_integer(5.into()), BigRational::zero()]);
    }

    #[test]
    fn saturation_examples() {
        let l = int_matrix(&[&[2, 4]]);
        assert_eq!(saturate(&l, 2), int_matrix(&[&[1, 2]]));
        let s = int_matrix(&[&[1, 0, 3], &[0, 1, 5]]);
        assert_eq!(saturate(&s, 3), hnf(&s, 3));
        assert_eq!(saturate(&int_matrix(&[&[3, 0], &[0, 5]]), 2), int_matrix(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn minkowski_table() {
        let table = [
            "2", "24", "48", "5760", "11520", "2903040", "5806080", "1393459200", "2786918400",
            "367873228800", "735746457600", "24103053950976000", "48206107901952000",
            "578473294823424000", "1156946589646848000", "9440684171518279680000",
            "18881368343036559360000", "271211974879377138647040000",
            "542423949758754277294080000", "3579998068407778230140928000000",
        ];
        for (i, v) in table.iter().enumerate() {
            assert_eq!(minkowski_bound(i as u64 + 1).to_string(), *v, "n = {}", i + 1);
        }
    }

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(proptest::collection::vec(-9i64..=9, cols), rows)
            .prop_map(|m| m.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn lll_postconditions(m in small_matrix(4, 5)) {
            prop_assume!(determinant(&gram(&m)) != BigInt::zero());
            let r = lll_reduce(&m, &default_delta()).unwrap();
            prop_assert!(is_lll_reduced(&r, &default_delta()));
            prop_assert!(same_lattice(&m, &r, 5));
        }

        #[test]
        fn saturation_index_matches_smith(m in small_matrix(3, 5)) {
            let h = hnf(&m, 5);
            prop_assume!(h.len() == 3);
            let sat = saturate(&m, 5);
            prop_assert_eq!(saturate(&sat, 5), sat.clone());
            prop_assert_eq!(sat.len(), 3);
            // index = |det C| where L = C * Sat; read C off the pivot columns
            let piv: Vec<usize> = sat.iter().map(|r| r.iter().position(|x| !x.is_zero()).unwrap()).collect();
            let lp: IntMatrix = h.iter().map(|r| piv.iter().map(|&j| r[j].clone()).collect()).collect();
            let sp: BigInt = sat.iter().zip(&piv).map(|(r, &j)| r[j].clone()).product();
            let idx = determinant(&lp).abs() / sp;
            let snf: BigInt = smith_diagonal(&m, 5).into_iter().product();
            prop_assert_eq!(idx, snf);
        }

        #[test]
        fn hnf_transform_is_consistent(m in small_matrix(4, 3)) {
            let (h, u, r) = hnf_with_transform(&m, 3);
            let prod: IntMatrix = u.iter().map(|row| (0..3).map(|j| row.iter().zip(&m).map(|(a, mr)| a * &mr[j]).sum()).collect()).collect();
            prop_assert_eq!(&prod, &h);
            prop_assert_eq!(determinant(&u).abs(), BigInt::one());
            prop_assert!(h[r..].iter().all(|row| row.iter().all(|x| x.is_zero())));
        }
    }

    fn gram(m: &IntMatrix) -> IntMatrix {
        m.iter().map(|a| m.iter().map(|b| dot(a, b)).collect()).collect()
    }
}
