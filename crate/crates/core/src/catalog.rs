//! Group constructors and the `.grp` group-spec text format.
//!
//! Point numbering conventions (1-based in text, 0-based in code):
//!
//! * cyclic and affine groups act on `Z/m`, residue `i` being point `i + 1`;
//! * in a wreath product, point `i` of block `j` is `(j - 1) * s + i`;
//! * projective points are normalized (first nonzero coordinate 1) and
//!   sorted lexicographically by packed field-element codes.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{euler_phi, unit_group_generators};
use crate::field::{FieldError, FqElem, FqField, MAX_EXTENSION_Q};
use crate::group::{GroupError, PermGroup};
use crate::perm::{ParseError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogError {
    Parse { line: usize, message: String },
    OrderMismatch { expected: u128, found: u128 },
    Unsupported(String),
    Group(GroupError),
    Field(FieldError),
}

impl fmt::Display for CatalogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogError::Parse { line, message } => write!(f, "line {line}: {message}"),
            CatalogError::OrderMismatch { expected, found } => {
                write!(f, "generators give order {found}, file declares {expected}")
            }
            CatalogError::Unsupported(what) => write!(f, "unsupported parameters: {what}"),
            CatalogError::Group(e) => write!(f, "{e}"),
            CatalogError::Field(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CatalogError {}

impl From<GroupError> for CatalogError {
    fn from(e: GroupError) -> Self {
        CatalogError::Group(e)
    }
}

impl From<FieldError> for CatalogError {
    fn from(e: FieldError) -> Self {
        CatalogError::Field(e)
    }
}

fn group(degree: usize, gens: Vec<Permutation>) -> PermGroup {
    let gens = if gens.is_empty() { vec![Permutation::identity(degree)] } else { gens };
    PermGroup::new(degree, gens).expect("catalog generators have matching degrees")
}

fn perm_from_fn(n: usize, f: impl Fn(usize) -> usize) -> Permutation {
    Permutation::from_images((0..n).map(f).collect()).expect("catalog map is a bijection")
}

/// The regular cyclic group generated by `(1,2,..,n)`.
pub fn cyclic_regular(n: usize) -> PermGroup {
    assert!(n >= 1);
    group(n, vec![perm_from_fn(n, |i| (i + 1) % n)])
}

/// `Hol(C_m) = AGL_1(Z/m)`: the maps `i -> u*i + t`, order `m * phi(m)`.
pub fn holomorph_cyclic(m: usize) -> PermGroup {
    assert!(m >= 1);
    let mut gens = vec![perm_from_fn(m, |i| (i + 1) % m)];
    for u in unit_group_generators(m as u64) {
        gens.push(perm_from_fn(m, |i| i * u as usize % m));
    }
    group(m, gens)
}

pub fn symmetric(n: usize) -> PermGroup {
    assert!(n >= 1);
    if n == 1 {
        return PermGroup::trivial(1);
    }
    let transposition = perm_from_fn(n, |i| match i {
        0 => 1,
        1 => 0,
        _ => i,
    });
    group(n, vec![transposition, perm_from_fn(n, |i| (i + 1) % n)])
}

pub fn alternating(n: usize) -> Result<PermGroup, CatalogError> {
    if n < 3 {
        return Err(CatalogError::Unsupported(format!("alternating group needs n >= 3, got {n}")));
    }
    let three = perm_from_fn(n, |i| match i {
        0 => 1,
        1 => 2,
        2 => 0,
        _ => i,
    });
    // (1,..,n) is even for odd n; otherwise use (2,..,n)
    let long = if n % 2 == 1 {
        perm_from_fn(n, |i| (i + 1) % n)
    } else {
        perm_from_fn(n, |i| if i == 0 { 0 } else if i == n - 1 { 1 } else { i + 1 })
    };
    Ok(group(n, vec![three, long]))
}

/// `A wr B` in its imprimitive action on `s * r` points, `r` blocks of size `s`.
pub fn wreath_imprimitive(inner: &PermGroup, outer: &PermGroup) -> PermGroup {
    let (s, r) = (inner.degree(), outer.degree());
    let n = s * r;
    let mut gens = Vec::new();
    for block in 0..r {
        for a in inner.generators().iter().filter(|a| !a.is_identity()) {
            gens.push(perm_from_fn(n, |x| {
                if x / s == block {
                    block * s + a.apply(x % s)
                } else {
                    x
                }
            }));
        }
    }
    for b in outer.generators().iter().filter(|b| !b.is_identity()) {
        gens.push(perm_from_fn(n, |x| b.apply(x / s) * s + x % s));
    }
    group(n, gens)
}

/// The group of degree `2 * 3^k` generated inside `Hol(C_{3^k}) wr C_2` by
/// the translations of each block, a diagonal multiplication by a generator
/// of the units, and the block swap. Order `2 * 3^(2k) * phi(3^k)`.
pub fn sharpness_group(k: u32) -> Result<PermGroup, CatalogError> {
    if k == 0 || 2 * 3usize.pow(k.min(8)) > 64 {
        return Err(CatalogError::Unsupported(format!("sharpness group needs 1 <= k <= 3, got {k}")));
    }
    let m = 3usize.pow(k);
    let n = 2 * m;
    let u = unit_group_generators(m as u64)[0] as usize;
    let t1 = perm_from_fn(n, |x| if x < m { (x + 1) % m } else { x });
    let t2 = perm_from_fn(n, |x| if x < m { x } else { m + (x - m + 1) % m });
    let diag = perm_from_fn(n, |x| if x < m { x * u % m } else { m + (x - m) * u % m });
    let swap = perm_from_fn(n, |x| (x + m) % n);
    Ok(group(n, vec![t1, t2, diag, swap]))
}

/// Expected order of [`sharpness_group`].
pub fn sharpness_order(k: u32) -> u128 {
    let m = 3u128.pow(k);
    2 * m * m * euler_phi(m as u64) as u128
}

/// `|PGL_d(q)| = q^(d(d-1)/2) * prod_{i=2..d} (q^i - 1)`.
pub fn pgl_order(d: u32, q: u64) -> u128 {
    let q = q as u128;
    let mut order = q.pow(d * (d - 1) / 2);
    for i in 2..=d {
        order *= q.pow(i) - 1;
    }
    order
}

/// Largest `q^d` for which projective spaces are built.
const MAX_VECTORS: u64 = 1 << 20;

/// The projective space `PG(d-1, q)` with its fixed point ordering.
#[derive(Clone, Debug)]
pub struct ProjectiveSpace {
    field: FqField,
    d: usize,
    /// Normalized coordinate vectors in point order.
    points: Vec<Vec<FqElem>>,
    /// Packed vector code -> point index (for normalized vectors).
    index: Vec<u32>,
}

impl ProjectiveSpace {
    pub fn new(d: u32, q: u64) -> Result<Self, CatalogError> {
        if d < 2 {
            return Err(CatalogError::Unsupported(format!("projective dimension needs d >= 2, got {d}")));
        }
        let (p, e) = prime_power(q)
            .ok_or_else(|| CatalogError::Unsupported(format!("{q} is not a prime power")))?;
        let field = FqField::new(p, e)?;
        let total = q.checked_pow(d).filter(|&t| t <= MAX_VECTORS).ok_or_else(|| {
            CatalogError::Unsupported(format!("q^d = {q}^{d} too large"))
        })?;
        let d = d as usize;
        let mut points = Vec::new();
        let mut index = vec![u32::MAX; total as usize];
        for code in 0..total {
            let v = unpack(code, d, q);
            if v.iter().find(|c| c.0 != 0).map(|c| c.0) == Some(1) {
                index[code as usize] = points.len() as u32;
                points.push(v);
            }
        }
        Ok(ProjectiveSpace { field, d, points, index })
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[FqElem] {
        &self.points[i]
    }

    /// Index of the point spanned by a nonzero vector.
    pub fn index_of(&self, v: &[FqElem]) -> usize {
        let f = &self.field;
        let lead = *v.iter().find(|c| c.0 != 0).expect("nonzero vector");
        let s = f.inv(lead).expect("nonzero");
        let code = v.iter().fold(0u64, |acc, &c| acc * f.q() as u64 + f.mul(c, s).0 as u64);
        self.index[code as usize] as usize
    }

    /// Row vector times matrix.
    pub fn apply_matrix(&self, v: &[FqElem], m: &Matrix) -> Vec<FqElem> {
        let f = &self.field;
        (0..self.d)
            .map(|j| (0..self.d).fold(f.zero(), |acc, i| f.add(acc, f.mul(v[i], m.at(i, j)))))
            .collect()
    }

    /// Action of an invertible matrix on the points (row-vector convention).
    pub fn matrix_permutation(&self, m: &Matrix) -> Permutation {
        let imgs = self.points.iter().map(|v| self.index_of(&self.apply_matrix(v, m))).collect();
        Permutation::from_images(imgs).expect("invertible matrix permutes points")
    }

    /// Coordinatewise Frobenius `x -> x^p`.
    pub fn frobenius_permutation(&self) -> Permutation {
        let f = &self.field;
        let imgs = self
            .points
            .iter()
            .map(|v| self.index_of(&v.iter().map(|&c| f.frobenius(c)).collect::<Vec<_>>()))
            .collect();
        Permutation::from_images(imgs).expect("Frobenius permutes points")
    }

    /// Generators of `GL_d(q)`: `diag(w, 1, .., 1)` for a primitive `w`, and the
    /// elementary transvections `I + c E_ij` for adjacent `i, j` and `c`
    /// running over the power basis `1, w, .., w^(e-1)`.
    pub fn gl_generators(&self) -> Vec<Matrix> {
        let f = &self.field;
        let d = self.d;
        let mut out = Vec::new();
        let mut diag = Matrix::identity(f, d);
        diag.set(0, 0, f.gen());
        out.push(diag);
        for k in 0..f.e() {
            let c = f.pow(f.gen(), k as u64);
            for i in 0..d - 1 {
                for (r, col) in [(i, i + 1), (i + 1, i)] {
                    let mut t = Matrix::identity(f, d);
                    t.set(r, col, c);
                    out.push(t);
                }
            }
        }
        out
    }
}

fn unpack(mut code: u64, d: usize, q: u64) -> Vec<FqElem> {
    let mut v = vec![FqElem(0); d];
    for slot in v.iter_mut().rev() {
        *slot = FqElem((code % q) as u32);
        code /= q;
    }
    v
}

/// `(p, e)` with `q = p^e`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let f = crate::arith::factorize(q);
    match f.as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

/// Square matrix over a small field, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    d: usize,
    entries: Vec<FqElem>,
}

impl Matrix {
    pub fn identity(f: &FqField, d: usize) -> Self {
        let mut entries = vec![f.zero(); d * d];
        for i in 0..d {
            entries[i * d + i] = f.one();
        }
        Matrix { d, entries }
    }

    pub fn from_rows(rows: Vec<Vec<FqElem>>) -> Self {
        let d = rows.len();
        assert!(rows.iter().all(|r| r.len() == d), "square matrix expected");
        Matrix { d, entries: rows.into_iter().flatten().collect() }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> FqElem {
        self.entries[i * self.d + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FqElem) {
        self.entries[i * self.d + j] = x;
    }

    pub fn transpose(&self) -> Matrix {
        let d = self.d;
        let mut out = self.clone();
        for i in 0..d {
            for j in 0..d {
                out.set(i, j, self.at(j, i));
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix, f: &FqField) -> Matrix {
        let d = self.d;
        let mut out = Matrix::identity(f, d);
        for i in 0..d {
            for j in 0..d {
                let s = (0..d).fold(f.zero(), |acc, k| f.add(acc, f.mul(self.at(i, k), other.at(k, j))));
                out.set(i, j, s);
            }
        }
        out
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self, f: &FqField) -> Option<Matrix> {
        let d = self.d;
        let mut a = self.clone();
        let mut inv = Matrix::identity(f, d);
        for col in 0..d {
            let pivot = (col..d).find(|&r| a.at(r, col).0 != 0)?;
            for j in 0..d {
                let (x, y) = (a.at(col, j), a.at(pivot, j));
                a.set(col, j, y);
                a.set(pivot, j, x);
                let (x, y) = (inv.at(col, j), inv.at(pivot, j));
                inv.set(col, j, y);
                inv.set(pivot, j, x);
            }
            let s = f.inv(a.at(col, col)).ok()?;
            for j in 0..d {
                a.set(col, j, f.mul(a.at(col, j), s));
                inv.set(col, j, f.mul(inv.at(col, j), s));
            }
            for r in 0..d {
                if r == col || a.at(r, col).0 == 0 {
                    continue;
                }
                let c = a.at(r, col);
                for j in 0..d {
                    a.set(r, j, f.sub(a.at(r, j), f.mul(c, a.at(col, j))));
                    inv.set(r, j, f.sub(inv.at(r, j), f.mul(c, inv.at(col, j))));
                }
            }
        }
        Some(inv)
    }
}

/// `PGL_d(q)` on the `(q^d - 1)/(q - 1)` projective points.
pub fn pgl(d: u32, q: u64) -> Result<PermGroup, CatalogError> {
    let space = ProjectiveSpace::new(d, q)?;
    let gens = space.gl_generators().iter().map(|m| space.matrix_permutation(m)).collect();
    Ok(PermGroup::new(space.len(), gens)?)
}

/// `PGammaL_d(q)`: `PGL_d(q)` extended by the coordinatewise Frobenius.
pub fn pgammal(d: u32, q: u64) -> Result<PermGroup, CatalogError> {
    let space = ProjectiveSpace::new(d, q)?;
    let mut gens: Vec<Permutation> =
        space.gl_generators().iter().map(|m| space.matrix_permutation(m)).collect();
    gens.push(space.frobenius_permutation());
    Ok(PermGroup::new(space.len(), gens)?)
}

/// Multiplication by a primitive element of `GF(q^d)`, written in the basis
/// `1, x, .., x^(d-1)` over the copy of `GF(q)` inside `GF(q^d)`.
#[derive(Clone, Debug)]
pub struct SingerData {
    /// The matrix of multiplication by `x` (row-vector convention).
    pub matrix: Matrix,
    /// Its action on projective points: an n-cycle.
    pub cycle: Permutation,
}

pub fn singer(d: u32, q: u64) -> Result<SingerData, CatalogError> {
    let space = ProjectiveSpace::new(d, q)?;
    let base = space.field().clone();
    let (p, e) = (base.p() as u64, base.e());
    let ext = FqField::with_limit(p, e * d, MAX_EXTENSION_Q)?;
    let x = ext.gen();
    let qd = ext.q() as u64;
    // GF(q) inside GF(q^d): the root of the base modulus among x^(n*j)
    let n = (qd - 1) / (q - 1);
    let eval = |y: FqElem| {
        base.modulus().iter().rev().fold(ext.zero(), |acc, &c| ext.add(ext.mul(acc, y), ext.from_int(c as i64)))
    };
    let root = (1..q)
        .map(|j| ext.pow(x, n * j))
        .find(|&y| eval(y) == ext.zero())
        .expect("base field embeds into its extension");
    let embed = |a: FqElem| {
        base.coeffs(a)
            .iter()
            .enumerate()
            .fold(ext.zero(), |acc, (i, &c)| ext.add(acc, ext.mul(ext.from_int(c as i64), ext.pow(root, i as u64))))
    };
    let x_pows: Vec<FqElem> = (0..d as u64).map(|i| ext.pow(x, i)).collect();
    let to_ext = |v: &[FqElem]| {
        v.iter().zip(&x_pows).fold(ext.zero(), |acc, (&c, &xp)| ext.add(acc, ext.mul(embed(c), xp)))
    };
    let d = d as usize;
    let mut coords = vec![Vec::new(); qd as usize];
    for code in 0..qd {
        let v = unpack(code, d, q);
        let z = to_ext(&v);
        coords[z.0 as usize] = v;
    }
    let rows: Vec<Vec<FqElem>> = (0..d)
        .map(|i| {
            let mut unit = vec![base.zero(); d];
            unit[i] = base.one();
            coords[ext.mul(to_ext(&unit), x).0 as usize].clone()
        })
        .collect();
    let matrix = Matrix::from_rows(rows);
    let cycle = space.matrix_permutation(&matrix);
    Ok(SingerData { matrix, cycle })
}

/// A Singer cycle of `PGL_d(q)`.
pub fn singer_cycle(d: u32, q: u64) -> Result<Permutation, CatalogError> {
    Ok(singer(d, q)?.cycle)
}

/// `PGL_3(q)` acting on points and hyperplanes (`2n` points), extended by
/// the duality `gamma` swapping point `i` with hyperplane `i`. Hyperplanes
/// carry the same coordinate labels as points: `[h] = { v : v.h = 0 }`, and
/// a matrix `A` sends `h` to `h A^(-T)`.
pub fn duality_extension(d: u32, q: u64) -> Result<PermGroup, CatalogError> {
    if d != 3 || !(q == 2 || q == 3) {
        return Err(CatalogError::Unsupported(format!("duality extension supports d = 3, q in {{2,3}}; got d = {d}, q = {q}")));
    }
    let space = ProjectiveSpace::new(d, q)?;
    let f = space.field().clone();
    let n = space.len();
    let mut gens = Vec::new();
    for m in space.gl_generators() {
        let on_points = space.matrix_permutation(&m);
        let dual = m.inverse(&f).expect("generator invertible").transpose();
        let on_hyper = space.matrix_permutation(&dual);
        gens.push(perm_from_fn(2 * n, |x| if x < n { on_points.apply(x) } else { n + on_hyper.apply(x - n) }));
    }
    gens.push(perm_from_fn(2 * n, |x| (x + n) % (2 * n)));
    Ok(PermGroup::new(2 * n, gens)?)
}

/// A named group description in the `.grp` text format.
///
/// ```text
/// # name M11
/// # expected_order 7920
/// degree 11
/// gen (2,10)(4,11)(5,7)(8,9)
/// gen (1,4,3,8)(2,5,6,9)
/// ```
///
/// Lines are trimmed. Blank lines are ignored and `#` starts a comment;
/// the comments `# name <label>` and `# expected_order <N>` are annotations.
/// Exactly one `degree N` line must precede every `gen <cycles>` line, and at
/// least one generator is required.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    pub generator_texts: Vec<String>,
    pub expected_order: Option<u128>,
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<GroupSpec, CatalogError> {
        let mut name = None;
        let mut degree = None;
        let mut gens = Vec::new();
        let mut expected = None;
        let err = |line: usize, message: String| CatalogError::Parse { line, message };
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                let comment = comment.trim();
                if let Some(v) = comment.strip_prefix("expected_order") {
                    let v = v.trim();
                    let n = v.parse::<u128>().map_err(|_| err(line_no, format!("bad expected_order {v:?}")))?;
                    if expected.replace(n).is_some() {
                        return Err(err(line_no, "duplicate expected_order".to_string()));
                    }
                } else if let Some(v) = comment.strip_prefix("name ") {
                    name = Some(v.trim().to_string());
                }
                continue;
            }
            let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match keyword {
                "degree" => {
                    if degree.is_some() {
                        return Err(err(line_no, "duplicate degree line".to_string()));
                    }
                    let n = rest.parse::<usize>().map_err(|_| err(line_no, format!("bad degree {rest:?}")))?;
                    if n == 0 || n > crate::perm::MAX_DEGREE {
                        return Err(err(line_no, format!("degree {n} out of range")));
                    }
                    degree = Some(n);
                }
                "gen" => {
                    let n = degree.ok_or_else(|| err(line_no, "gen before degree".to_string()))?;
                    Permutation::parse(rest, n)
                        .map_err(|e: ParseError| err(line_no, format!("generator: {e}")))?;
                    gens.push(rest.to_string());
                }
                other => return Err(err(line_no, format!("unknown keyword {other:?}"))),
            }
        }
        let degree = degree.ok_or_else(|| err(0, "missing degree line".to_string()))?;
        if gens.is_empty() {
            return Err(err(0, "no generators".to_string()));
        }
        Ok(GroupSpec { name: name.unwrap_or_default(), degree, generator_texts: gens, expected_order: expected })
    }

    pub fn generators(&self) -> Result<Vec<Permutation>, CatalogError> {
        self.generator_texts
            .iter()
            .enumerate()
            .map(|(k, t)| {
                Permutation::parse(t, self.degree)
                    .map_err(|e| CatalogError::Parse { line: 0, message: format!("generator {}: {e}", k + 1) })
            })
            .collect()
    }

    /// Builds the group and checks the declared order when present.
    pub fn build(&self) -> Result<PermGroup, CatalogError> {
        let g = PermGroup::new(self.degree, self.generators()?)?;
        if let Some(expected) = self.expected_order {
            if g.order() != expected {
                return Err(CatalogError::OrderMismatch { expected, found: g.order() });
            }
        }
        Ok(g)
    }

    pub fn from_group(name: &str, g: &PermGroup) -> GroupSpec {
        GroupSpec {
            name: name.to_string(),
            degree: g.degree(),
            generator_texts: g.generators().iter().map(|p| p.to_cycle_string()).collect(),
            expected_order: Some(g.order()),
        }
    }

    /// Serializes in the canonical layout: annotations, degree, generators.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if !self.name.is_empty() {
            s.push_str(&format!("# name {}\n", self.name));
        }
        if let Some(o) = self.expected_order {
            s.push_str(&format!("# expected_order {o}\n"));
        }
        s.push_str(&format!("degree {}\n", self.degree));
        for g in &self.generator_texts {
            s.push_str(&format!("gen {g}\n"));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::naive_closure;

    #[test]
    fn small_families() {
        let c6 = cyclic_regular(6);
        assert_eq!(c6.order(), 6);
        assert!(c6.is_transitive());
        assert_eq!(cyclic_regular(1).order(), 1);
        assert_eq!(holomorph_cyclic(7).order(), 42);
        assert_eq!(holomorph_cyclic(2).order(), 2);
        assert_eq!(holomorph_cyclic(9).order(), 54);
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert!(alternating(2).is_err());
        let a7 = alternating(7).unwrap();
        assert!(a7.contains(&Permutation::parse("(1,2,3,4,5,6,7)", 7).unwrap()).unwrap());
        for n in 3..=8 {
            assert_eq!(alternating(n).unwrap().order() * 2, symmetric(n).order());
        }
    }

    #[test]
    fn holomorph_orders_match_formula_and_closure() {
        for m in 2..=27usize {
            let h = holomorph_cyclic(m);
            assert_eq!(h.order(), (m as u128) * euler_phi(m as u64) as u128, "m = {m}");
            let naive = naive_closure(m, h.generators(), 10_000).unwrap();
            assert_eq!(naive.len() as u128, h.order());
        }
    }

    #[test]
    fn wreath_orders() {
        let c3 = cyclic_regular(3);
        let w = wreath_imprimitive(&c3, &c3);
        assert_eq!((w.degree(), w.order()), (9, 81));
        let s2 = symmetric(2);
        assert_eq!(wreath_imprimitive(&s2, &s2).order(), 8);
        let a = symmetric(3);
        let b = cyclic_regular(4);
        assert_eq!(wreath_imprimitive(&a, &b).order(), 6u128.pow(4) * 4);
        // intransitive top group still gives the full base group
        let b = PermGroup::new(3, vec![Permutation::parse("(1,2)", 3).unwrap()]).unwrap();
        assert_eq!(wreath_imprimitive(&cyclic_regular(2), &b).order(), 8 * 2);
    }

    #[test]
    fn projective_groups() {
        for (d, q, n) in [(3u32, 2u64, 7usize), (2, 5, 6), (2, 8, 9), (2, 4, 5), (2, 7, 8), (3, 3, 13)] {
            let g = pgl(d, q).unwrap();
            assert_eq!(g.degree(), n);
            assert_eq!(g.order(), pgl_order(d, q), "PGL({d},{q})");
        }
        assert_eq!(pgl(3, 2).unwrap().order(), 168);
        assert_eq!(pgl(2, 5).unwrap().order(), 120);
        assert_eq!(pgl(2, 8).unwrap().order(), 504);
        assert_eq!(pgammal(2, 8).unwrap().order(), 1512);
        assert_eq!(pgammal(2, 4).unwrap().order(), 120);
        assert_eq!(pgammal(2, 9).unwrap().order(), 2 * pgl_order(2, 9));
        let (a, b) = (pgammal(2, 5).unwrap(), pgl(2, 5).unwrap());
        assert!(a.contains_group(&b) && b.contains_group(&a));
        assert!(pgl(1, 2).is_err());
        assert!(pgl(2, 6).is_err());
    }

    #[test]
    fn point_order_is_lexicographic() {
        let s = ProjectiveSpace::new(2, 3).unwrap();
        let pts: Vec<Vec<u32>> = (0..s.len()).map(|i| s.point(i).iter().map(|c| c.0).collect()).collect();
        assert_eq!(pts, vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn singer_cycles_are_full_cycles_in_pgl() {
        for (d, q) in [(3u32, 2u64), (2, 4), (2, 5), (2, 7), (2, 8), (3, 3), (2, 9), (4, 2), (3, 4), (2, 16)] {
            let s = singer_cycle(d, q).unwrap();
            assert!(s.is_full_cycle(), "Singer({d},{q})");
            if q <= 9 {
                assert!(pgl(d, q).unwrap().contains(&s).unwrap(), "Singer({d},{q}) in PGL");
            }
        }
    }

    #[test]
    fn duality_extension_order() {
        let g = duality_extension(3, 2).unwrap();
        assert_eq!((g.degree(), g.order()), (14, 336));
        assert!(g.is_transitive());
        assert_eq!(duality_extension(3, 3).unwrap().order(), 2 * pgl_order(3, 3));
        assert!(duality_extension(2, 2).is_err());
    }

    #[test]
    fn sharpness_orders() {
        for k in 1..=3 {
            let g = sharpness_group(k).unwrap();
            assert_eq!(g.degree(), 2 * 3usize.pow(k));
            assert_eq!(g.order(), sharpness_order(k));
        }
        assert_eq!(sharpness_group(1).unwrap().order(), 36);
        assert_eq!(sharpness_group(2).unwrap().order(), 972);
        assert!(sharpness_group(0).is_err());
        assert!(sharpness_group(4).is_err());
    }

    #[test]
    fn group_spec_round_trip() {
        // comments only start lines
        assert!(GroupSpec::parse("degree 3\ngen (1,2) # swap\n").is_err());
        let text = "# name M11\n# expected_order 7920\ndegree 11\ngen (2,10)(4,11)(5,7)(8,9)\n\n  gen (1,4,3,8)(2,5,6,9)\n";
        let spec = GroupSpec::parse(text).unwrap();
        assert_eq!(spec.name, "M11");
        assert_eq!(spec.build().unwrap().order(), 7920);
        let again = GroupSpec::parse(&spec.to_text()).unwrap();
        assert_eq!(again, spec);
    }

    #[test]
    fn group_spec_errors() {
        let bad = "degree 4\ngen (1,2)(2,3)\n";
        assert!(matches!(GroupSpec::parse(bad), Err(CatalogError::Parse { line: 2, .. })));
        assert!(GroupSpec::parse("gen (1,2)\ndegree 3\n").is_err());
        assert!(GroupSpec::parse("degree 3\n").is_err());
        assert!(GroupSpec::parse("degree 3\ndegree 3\ngen ()\n").is_err());
        assert!(GroupSpec::parse("degree x\ngen ()\n").is_err());
        assert!(GroupSpec::parse("degree 3\nfoo (1,2)\n").is_err());
        let wrong = GroupSpec::parse("# expected_order 5\ndegree 3\ngen (1,2,3)\n").unwrap();
        assert_eq!(wrong.build().unwrap_err(), CatalogError::OrderMismatch { expected: 5, found: 3 });
    }
}
