//! Exact scalars (ℚ via GMP rationals, or GF(p) for a validated prime) and dense
//! matrices over them, with deterministic rank and nullspace computations.
//!
//! Rank and nullspace over ℚ run a fraction-free elimination on denominator-cleared
//! integer rows: each update is the cross-multiplied combination pivot·row − entry·pivot_row,
//! followed by stripping the row's integer content. The stripped entries never exceed
//! the corresponding minors of the input matrix, so intermediate swell stays polynomial.
//! Pivoting is always "first nonzero in column order", which makes every echelon form,
//! rank, and kernel basis reproducible bit for bit.

use crate::{Error, Result};
use rug::integer::Order;
use rug::ops::RemRounding;
use rug::{Integer, Rational};
use std::cmp::Ordering;
use std::fmt;

/// The coefficient field every scalar of a computation lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldSpec {
    Q,
    GFp(u64),
}

impl FieldSpec {
    /// Validated GF(p) constructor; rejects composite moduli.
    pub fn gfp(p: u64) -> Result<FieldSpec> {
        if p >= 2 && is_prime_u64(p) {
            Ok(FieldSpec::GFp(p))
        } else {
            Err(Error::NonPrimeModulus(p))
        }
    }

    /// Parses the token format used by the FATLINES_FIELD environment
    /// variable and the C bindings: "Q" or "GFP:<p>".
    pub fn parse_token(s: &str) -> Result<FieldSpec> {
        if s == "Q" {
            return Ok(FieldSpec::Q);
        }
        if let Some(p) = s.strip_prefix("GFP:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::SchemaError(format!("bad modulus in field token {s:?}")))?;
            return FieldSpec::gfp(p);
        }
        Err(Error::SchemaError(format!(
            "field must be \"Q\" or \"GFP:<p>\", got {s:?}"
        )))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Q => write!(f, "Q"),
            FieldSpec::GFp(p) => write!(f, "GF({p})"),
        }
    }
}

/// Deterministic Miller-Rabin; the fixed base set decides primality exactly for all u64.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// One exact field element. All arithmetic is exact; rationals stay reduced with a
/// positive denominator (GMP canonical form), GF(p) values stay in 0..p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    Fp { v: u64, p: u64 },
}

impl Scalar {
    pub fn zero(field: FieldSpec) -> Scalar {
        Scalar::from_i64(0, field)
    }

    pub fn one(field: FieldSpec) -> Scalar {
        Scalar::from_i64(1, field)
    }

    pub fn from_i64(x: i64, field: FieldSpec) -> Scalar {
        match field {
            FieldSpec::Q => Scalar::Q(Rational::from(x)),
            FieldSpec::GFp(_) => Scalar::from_integer(Integer::from(x), field),
        }
    }

    pub fn from_integer(x: Integer, field: FieldSpec) -> Scalar {
        match field {
            FieldSpec::Q => Scalar::Q(Rational::from(x)),
            FieldSpec::GFp(p) => {
                let m = Integer::from(p);
                let mut r = x.rem_euc(&m);
                if r < 0 {
                    r += &m;
                }
                Scalar::Fp {
                    v: r.to_u64().expect("residue fits u64"),
                    p,
                }
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Q(_) => FieldSpec::Q,
            Scalar::Fp { p, .. } => FieldSpec::GFp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => *r == 0,
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(Rational::from(a + b)),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) => {
                debug_assert_eq!(p, q);
                Scalar::Fp {
                    v: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    p: *p,
                }
            }
            _ => panic!("field mismatch"),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(Rational::from(-a)),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
        }
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(Rational::from(a * b)),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) => {
                debug_assert_eq!(p, q);
                Scalar::Fp {
                    v: mul_mod(*a, *b, *p),
                    p: *p,
                }
            }
            _ => panic!("field mismatch"),
        }
    }

    /// Multiplicative inverse; None for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(a) => Scalar::Q(Rational::from(a.recip_ref())),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: inv_mod(*v, *p),
                p: *p,
            },
        })
    }

    pub fn div(&self, o: &Scalar) -> Option<Scalar> {
        o.inv().map(|i| self.mul(&i))
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Scalar) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => a.cmp(b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) => (p, a).cmp(&(q, b)),
            (Scalar::Q(_), Scalar::Fp { .. }) => Ordering::Less,
            (Scalar::Fp { .. }, Scalar::Q(_)) => Ordering::Greater,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

/// Canonical integer form of a scalar vector: denominators cleared, content stripped,
/// first nonzero entry positive. Over GF(p) the residues are returned unchanged.
pub fn integer_normalized(v: &[Scalar]) -> Vec<Integer> {
    if v.is_empty() {
        return Vec::new();
    }
    match v[0].field() {
        FieldSpec::GFp(_) => v
            .iter()
            .map(|s| match s {
                Scalar::Fp { v, .. } => Integer::from(*v),
                Scalar::Q(_) => unreachable!("field mismatch"),
            })
            .collect(),
        FieldSpec::Q => {
            let mut lcm = Integer::from(1);
            for s in v {
                if let Scalar::Q(r) = s {
                    lcm.lcm_mut(r.denom());
                }
            }
            let mut out: Vec<Integer> = v
                .iter()
                .map(|s| match s {
                    Scalar::Q(r) => r.numer() * Integer::from(&lcm / r.denom()),
                    Scalar::Fp { .. } => unreachable!("field mismatch"),
                })
                .collect();
            let g = content(&out);
            if g > 1 {
                for e in &mut out {
                    e.div_exact_mut(&g);
                }
            }
            if let Some(first) = out.iter().find(|e| **e != 0) {
                if *first < 0 {
                    for e in &mut out {
                        *e = Integer::from(-&*e);
                    }
                }
            }
            out
        }
    }
}

/// gcd of all entries (0 for the zero vector); stops early once it reaches 1.
pub(crate) fn content(row: &[Integer]) -> Integer {
    let mut g = Integer::new();
    for e in row {
        if *e != 0 {
            g.gcd_mut(e);
            if g == 1 {
                break;
            }
        }
    }
    g
}

/// Dense row-major matrix over one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Matrix {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            debug_assert!(r.iter().all(|s| s.field() == field), "field mismatch");
            data.extend(r);
        }
        Matrix {
            field,
            rows: nrows,
            cols,
            data,
        }
    }

    pub fn from_i64_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_i64(x, field)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        assert_eq!(self.field, o.field, "field mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, o.cols);
        for r in 0..self.rows {
            for c in 0..o.cols {
                let mut acc = Scalar::zero(self.field);
                for k in 0..self.cols {
                    let a = self.get(r, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(o.get(k, c)));
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    /// Matrix·vector, exact.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero(self.field);
                for (c, vc) in v.iter().enumerate() {
                    let a = self.get(r, c);
                    if !a.is_zero() && !vc.is_zero() {
                        acc = acc.add(&a.mul(vc));
                    }
                }
                acc
            })
            .collect()
    }

    /// Vertical stack; both operands keep their row order.
    pub fn vstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.cols, "column mismatch");
        assert_eq!(self.field, o.field, "field mismatch");
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Matrix {
            field: self.field,
            rows: self.rows + o.rows,
            cols: self.cols,
            data,
        }
    }

    /// Rank by fraction-free Gaussian elimination (ℚ) or standard row reduction (GF(p)).
    pub fn rank(&self) -> usize {
        match self.field {
            FieldSpec::Q => {
                let rows = self.cleared_integer_rows();
                q_echelon(rows, self.cols).pivots.len()
            }
            FieldSpec::GFp(p) => {
                let rows = self.fp_rows(p);
                fp_echelon(rows, self.cols, p).pivots.len()
            }
        }
    }

    /// Deterministic kernel basis; one vector per free column, ascending. Over ℚ each
    /// vector is primitive-integer valued with its first nonzero entry positive; over
    /// GF(p) the first nonzero entry is 1. Every vector satisfies self·v = 0 exactly.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        match self.field {
            FieldSpec::Q => self.nullspace_q(),
            FieldSpec::GFp(p) => self.nullspace_fp(p),
        }
    }

    /// Exact rank via modular certificates; always equals `rank()`, usually much faster.
    ///
    /// A single elimination mod a prime certifies rank ≥ r (a nonzero r-minor mod p is
    /// nonzero over ℤ), so r = min(rows, cols) needs one prime. Otherwise primes are
    /// accumulated: were the true rank ≥ r+1, some (r+1)-minor D would be nonzero with
    /// |D| below the Hadamard bound, yet every tried prime sees rank ≤ r and therefore
    /// divides D; once the primes' product clears the bound, D would have to be 0.
    pub fn rank_certified(&self) -> usize {
        match self.field {
            FieldSpec::GFp(p) => {
                let rows = self.fp_rows(p);
                fp_echelon(rows, self.cols, p).pivots.len()
            }
            FieldSpec::Q => {
                let rows: Vec<Vec<Integer>> = self
                    .cleared_integer_rows()
                    .into_iter()
                    .filter(|r| r.iter().any(|e| *e != 0))
                    .collect();
                if rows.is_empty() || self.cols == 0 {
                    return 0;
                }
                let nmax = rows.len().min(self.cols);
                // log2 of each row's 2-norm, padded: bound for any minor using that row
                let mut row_bits: Vec<f64> = rows
                    .iter()
                    .map(|r| {
                        let mb = r.iter().map(|e| e.significant_bits()).max().unwrap_or(0);
                        mb as f64 + 0.5 * (self.cols as f64).log2() + 1.0
                    })
                    .collect();
                row_bits.sort_by(|a, b| b.partial_cmp(a).unwrap());
                let digits: Vec<Vec<(bool, Vec<u64>)>> = rows
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|e| (*e < 0, e.to_digits::<u64>(Order::Lsf)))
                            .collect()
                    })
                    .collect();
                let mut best = 0usize;
                let mut log_prod = 0.0f64;
                let mut p = u32::MAX as u64; // descending 31-32 bit primes, fixed schedule
                loop {
                    while !is_prime_u64(p) {
                        p -= 1;
                    }
                    let reduced: Vec<Vec<u64>> = digits
                        .iter()
                        .map(|r| r.iter().map(|(neg, d)| horner_mod(*neg, d, p)).collect())
                        .collect();
                    let rp = fp_echelon(reduced, self.cols, p).pivots.len();
                    best = best.max(rp);
                    if best == nmax {
                        return best;
                    }
                    log_prod += (p as f64).log2();
                    let bound: f64 = row_bits.iter().take(best + 1).sum::<f64>() + 64.0;
                    if log_prod > bound {
                        return best;
                    }
                    p -= 1;
                }
            }
        }
    }

    /// Inverse by Gauss-Jordan over the field; SingularChange when rank < n.
    pub fn invert(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::SingularChange);
        }
        let n = self.rows;
        let mut work: Vec<Vec<Scalar>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| {
                    if c == r {
                        Scalar::one(self.field)
                    } else {
                        Scalar::zero(self.field)
                    }
                }));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !work[r][col].is_zero())
                .ok_or(Error::SingularChange)?;
            work.swap(col, piv);
            let inv = work[col][col].inv().expect("nonzero pivot");
            for x in work[col][col..].iter_mut() {
                *x = x.mul(&inv);
            }
            let pivot_row = work[col][col..].to_vec();
            for (r, row) in work.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (x, p) in row[col..].iter_mut().zip(&pivot_row) {
                    *x = x.sub(&f.mul(p));
                }
            }
        }
        Ok(Matrix::from_rows(
            self.field,
            work.into_iter().map(|r| r[n..].to_vec()).collect(),
        ))
    }

    /// Rows as denominator-cleared, content-stripped integer vectors (rank-preserving).
    fn cleared_integer_rows(&self) -> Vec<Vec<Integer>> {
        (0..self.rows)
            .map(|r| {
                let mut lcm = Integer::from(1);
                for c in 0..self.cols {
                    if let Scalar::Q(q) = self.get(r, c) {
                        lcm.lcm_mut(q.denom());
                    } else {
                        unreachable!("field mismatch");
                    }
                }
                let mut row: Vec<Integer> = (0..self.cols)
                    .map(|c| match self.get(r, c) {
                        Scalar::Q(q) => q.numer() * Integer::from(&lcm / q.denom()),
                        Scalar::Fp { .. } => unreachable!(),
                    })
                    .collect();
                let g = content(&row);
                if g > 1 {
                    for e in &mut row {
                        e.div_exact_mut(&g);
                    }
                }
                row
            })
            .collect()
    }

    fn fp_rows(&self, p: u64) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| match self.get(r, c) {
                        Scalar::Fp { v, p: q } => {
                            debug_assert_eq!(*q, p);
                            *v
                        }
                        Scalar::Q(_) => unreachable!("field mismatch"),
                    })
                    .collect()
            })
            .collect()
    }

    fn nullspace_q(&self) -> Vec<Vec<Scalar>> {
        let ech = q_echelon(self.cleared_integer_rows(), self.cols);
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.cols];
            for &c in &ech.pivots {
                s[c] = true;
            }
            s
        };
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if pivot_set[f] {
                continue;
            }
            // integer back-substitution: keep v integral by rescaling, strip content at the end
            let mut v = vec![Integer::new(); self.cols];
            v[f] = Integer::from(1);
            for i in (0..ech.rows.len()).rev() {
                let pc = ech.pivots[i];
                let row = &ech.rows[i];
                let mut s = Integer::new();
                for c in pc + 1..self.cols {
                    if v[c] != 0 && row[c] != 0 {
                        s += Integer::from(&row[c] * &v[c]);
                    }
                }
                if s == 0 {
                    continue;
                }
                let piv = &row[pc];
                for (c, e) in v.iter_mut().enumerate() {
                    if c != pc && *e != 0 {
                        *e *= piv;
                    }
                }
                v[pc] = -s;
                let g = content(&v);
                if g > 1 {
                    for e in &mut v {
                        e.div_exact_mut(&g);
                    }
                }
            }
            if let Some(first) = v.iter().find(|e| **e != 0) {
                if *first < 0 {
                    for e in &mut v {
                        *e = Integer::from(-&*e);
                    }
                }
            }
            basis.push(
                v.into_iter()
                    .map(|e| Scalar::Q(Rational::from(e)))
                    .collect(),
            );
        }
        basis
    }

    fn nullspace_fp(&self, p: u64) -> Vec<Vec<Scalar>> {
        let ech = fp_echelon(self.fp_rows(p), self.cols, p);
        let mut pivot_set = vec![false; self.cols];
        for &c in &ech.pivots {
            pivot_set[c] = true;
        }
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if pivot_set[f] {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[f] = 1;
            for i in (0..ech.rows.len()).rev() {
                let pc = ech.pivots[i];
                let row = &ech.rows[i];
                let mut s = 0u64;
                for c in pc + 1..self.cols {
                    if v[c] != 0 && row[c] != 0 {
                        s = (s as u128 + row[c] as u128 * v[c] as u128 % p as u128) as u64 % p;
                    }
                }
                // pivot entries are normalized to 1, so v[pc] = −s
                v[pc] = if s == 0 { 0 } else { p - s };
            }
            if let Some(first) = v.iter().copied().find(|&e| e != 0) {
                if first != 1 {
                    let fi = inv_mod(first, p);
                    for e in &mut v {
                        *e = mul_mod(*e, fi, p);
                    }
                }
            }
            basis.push(v.into_iter().map(|e| Scalar::Fp { v: e, p }).collect());
        }
        basis
    }
}

struct QEchelon {
    rows: Vec<Vec<Integer>>,
    pivots: Vec<usize>,
}

/// Fraction-free forward elimination with per-row content stripping.
/// Invariant entering column c: every live row is zero in all columns < c.
fn q_echelon(rows: Vec<Vec<Integer>>, cols: usize) -> QEchelon {
    let mut live: Vec<Vec<Integer>> = rows
        .into_iter()
        .filter(|r| r.iter().any(|e| *e != 0))
        .collect();
    let mut out_rows = Vec::new();
    let mut pivots = Vec::new();
    for col in 0..cols {
        if live.is_empty() {
            break;
        }
        let Some(pi) = live.iter().position(|r| r[col] != 0) else {
            continue;
        };
        let prow = live.remove(pi);
        let pval = prow[col].clone();
        live.retain_mut(|r| {
            if r[col] == 0 {
                return true;
            }
            let f = std::mem::replace(&mut r[col], Integer::new());
            for c in col + 1..cols {
                if prow[c] != 0 {
                    let t = Integer::from(&prow[c] * &f);
                    r[c] *= &pval;
                    r[c] -= t;
                } else if r[c] != 0 {
                    r[c] *= &pval;
                }
            }
            let g = content(&r[col + 1..]);
            if g > 1 {
                for e in &mut r[col + 1..] {
                    e.div_exact_mut(&g);
                }
            }
            g != 0
        });
        out_rows.push(prow);
        pivots.push(col);
    }
    QEchelon {
        rows: out_rows,
        pivots,
    }
}

struct FpEchelon {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

/// Standard row reduction mod p with pivot rows normalized to leading 1.
fn fp_echelon(rows: Vec<Vec<u64>>, cols: usize, p: u64) -> FpEchelon {
    let mut live: Vec<Vec<u64>> = rows
        .into_iter()
        .filter(|r| r.iter().any(|&e| e != 0))
        .collect();
    let mut out_rows: Vec<Vec<u64>> = Vec::new();
    let mut pivots = Vec::new();
    for col in 0..cols {
        if live.is_empty() {
            break;
        }
        let Some(pi) = live.iter().position(|r| r[col] != 0) else {
            continue;
        };
        let mut prow = live.remove(pi);
        let inv = inv_mod(prow[col], p);
        for e in &mut prow[col..] {
            *e = mul_mod(*e, inv, p);
        }
        live.retain_mut(|r| {
            let f = r[col];
            if f == 0 {
                return true;
            }
            r[col] = 0;
            let mut nonzero = false;
            for c in col + 1..cols {
                if prow[c] != 0 {
                    let t = mul_mod(f, prow[c], p);
                    r[c] = (r[c] + p - t) % p;
                }
                nonzero |= r[c] != 0;
            }
            nonzero
        });
        out_rows.push(prow);
        pivots.push(col);
    }
    FpEchelon {
        rows: out_rows,
        pivots,
    }
}

/// Value of a signed multi-limb integer mod p, most-significant limb first.
fn horner_mod(neg: bool, digits: &[u64], p: u64) -> u64 {
    let mut acc: u64 = 0;
    for d in digits.iter().rev() {
        acc = (((acc as u128) << 64 | *d as u128) % p as u128) as u64;
    }
    if neg && acc != 0 {
        p - acc
    } else {
        acc
    }
}
