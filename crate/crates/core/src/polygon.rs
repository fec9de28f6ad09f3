//! Side-paired polygons realizing irreducible Type 1 actions, handle
//! normalization, and the symplectic matrix of the polygon rotation.
//!
//! Homology of the quotient surface is computed combinatorially: with one
//! face, `H_1` is the kernel of the edge-to-vertex boundary map, and the
//! normalization procedure supplies a symplectic basis `x_1, y_1, ...` as
//! integer combinations of the polygon letters.

use std::collections::HashMap;
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::arith::inv_mod;
use crate::symplectic::SympMatrix;
use crate::{ClassKind, ConePair, DataSet, Error, IntMatrix, Result};

/// One side of a polygon: a letter, possibly inverted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Side {
    pub label: u32,
    pub inverse: bool,
}

/// A polygon whose sides are labelled by letters, each letter occurring twice
/// with opposite orientations; the two occurrences are glued.
///
/// Letters `1..=base` come from the realization; larger labels are created by
/// normalization and print as `x_i`, `y_i`. The last `normalized` groups of
/// four sides are commutators `x y x^-1 y^-1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SidePairedPolygon {
    word: Vec<Side>,
    base: u32,
    normalized: usize,
}

impl SidePairedPolygon {
    /// Builds a polygon from a boundary word; each letter must occur exactly
    /// once with each orientation.
    pub fn new(word: Vec<Side>, base: u32) -> Result<Self> {
        let mut seen: HashMap<u32, (u32, u32)> = HashMap::new();
        for s in &word {
            let e = seen.entry(s.label).or_default();
            if s.inverse {
                e.1 += 1;
            } else {
                e.0 += 1;
            }
        }
        if seen.values().any(|&c| c != (1, 1)) {
            return Err(Error::Realization("each letter must appear once with each orientation".into()));
        }
        Ok(SidePairedPolygon { word, base, normalized: 0 })
    }

    pub fn side_count(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[Side] {
        &self.word
    }

    /// Letters in order of first occurrence.
    pub fn letters(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for s in &self.word {
            if !out.contains(&s.label) {
                out.push(s.label);
            }
        }
        out
    }

    /// Position of the other side carrying the letter at position `p`.
    pub fn partner(&self, p: usize) -> usize {
        let l = self.word[p].label;
        (0..self.word.len()).find(|&q| q != p && self.word[q].label == l).expect("letters occur twice")
    }

    pub fn letter_name(&self, label: u32) -> String {
        if label <= self.base {
            format!("a{label}")
        } else {
            let k = label - self.base - 1;
            format!("{}{}", if k.is_multiple_of(2) { "x" } else { "y" }, k / 2 + 1)
        }
    }

    /// The boundary word, e.g. `a1 a2 a1^-1 a2^-1`.
    pub fn boundary_word(&self) -> String {
        self.word
            .iter()
            .map(|s| format!("{}{}", self.letter_name(s.label), if s.inverse { "^-1" } else { "" }))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Union-find over side endpoints: vertex classes of corners `0..k`, where
    /// corner `p` is the start of side `p`.
    fn vertex_classes(&self) -> Vec<usize> {
        let k = self.word.len();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut first: HashMap<u32, (usize, usize)> = HashMap::new();
        for (p, s) in self.word.iter().enumerate() {
            let (tail, head) = if s.inverse { ((p + 1) % k, p) } else { (p, (p + 1) % k) };
            if let Some(&(t0, h0)) = first.get(&s.label) {
                let (a, b) = (find(&mut parent, t0), find(&mut parent, tail));
                parent[a] = b;
                let (a, b) = (find(&mut parent, h0), find(&mut parent, head));
                parent[a] = b;
            } else {
                first.insert(s.label, (tail, head));
            }
        }
        (0..k).map(|x| find(&mut parent, x)).collect()
    }

    pub fn vertex_count(&self) -> usize {
        let mut v = self.vertex_classes();
        v.sort();
        v.dedup();
        v.len()
    }

    /// Genus of the quotient surface: `V - E + 1 = 2 - 2g`.
    pub fn genus(&self) -> u32 {
        let e = self.word.len() / 2;
        ((e + 1 - self.vertex_count()) / 2) as u32
    }

    /// Vertex-by-letter boundary matrix `head - tail`, letters in `labels` order.
    pub fn boundary_matrix(&self, labels: &[u32]) -> IntMatrix {
        let classes = self.vertex_classes();
        let mut reps = classes.clone();
        reps.sort();
        reps.dedup();
        let k = self.word.len();
        let mut d = IntMatrix::zeros(reps.len(), labels.len());
        for (p, s) in self.word.iter().enumerate() {
            if s.inverse {
                continue;
            }
            let col = labels.iter().position(|l| *l == s.label).expect("label listed");
            let tail = reps.binary_search(&classes[p]).unwrap();
            let head = reps.binary_search(&classes[(p + 1) % k]).unwrap();
            d[(head, col)] += 1;
            d[(tail, col)] -= 1;
        }
        d
    }

    /// Whether the word already ends in the full product of `g` commutators.
    pub fn is_normal(&self) -> bool {
        4 * self.normalized == self.word.len()
    }
}

impl fmt::Display for SidePairedPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.boundary_word())
    }
}

/// Each target letter expressed as an integer combination of source letters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyMap {
    pub source: Vec<u32>,
    pub images: Vec<(u32, Vec<i64>)>,
}

impl HomologyMap {
    pub fn identity(letters: &[u32]) -> Self {
        let images = letters
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let mut v = vec![0; letters.len()];
                v[i] = 1;
                (*l, v)
            })
            .collect();
        HomologyMap { source: letters.to_vec(), images }
    }

    pub fn image(&self, label: u32) -> Option<&[i64]> {
        self.images.iter().find(|(l, _)| *l == label).map(|(_, v)| v.as_slice())
    }

    /// `self` after `earlier`: images expressed in the source letters of `earlier`.
    pub fn compose(&self, earlier: &HomologyMap) -> HomologyMap {
        let images = self
            .images
            .iter()
            .map(|(l, v)| {
                let mut out = vec![0i64; earlier.source.len()];
                for (coef, src) in v.iter().zip(&self.source) {
                    if *coef == 0 {
                        continue;
                    }
                    let e = earlier.image(*src).expect("composable maps");
                    for (o, x) in out.iter_mut().zip(e) {
                        *o += coef * x;
                    }
                }
                (*l, out)
            })
            .collect();
        HomologyMap { source: earlier.source.clone(), images }
    }

    /// Source-by-target matrix whose columns are the images.
    pub fn matrix(&self) -> IntMatrix {
        let cols: Vec<Vec<i64>> = self.images.iter().map(|(_, v)| v.clone()).collect();
        IntMatrix::from_cols(&cols)
    }

    /// Whether the images are a basis of a saturated sublattice: every
    /// invariant factor is one. With rank `2g` inside `ker` of the boundary map
    /// this makes the map an isomorphism onto `H_1`.
    pub fn is_unimodular(&self) -> bool {
        let m = self.matrix();
        let inv = m.smith_invariants();
        inv.len() == self.images.len() && inv.iter().all(|x| x.abs() == 1)
    }
}

/// The polygon of an irreducible Type 1 data set `(n,0;(c1,n1),(c2,n2),(c3,n))`.
///
/// With `q = (n/n2) c3^-1` and `j = n2 - c2`, side `2m+1` is glued to side
/// `2z` where `z = m + qj mod n` (a `2n`-gon), or side `m` to side `z-1` when
/// `n1` or `n2` is 2 (an `n`-gon).
pub fn realize_type1(d: &DataSet) -> Result<SidePairedPolygon> {
    Ok(realize_with_order(d)?.0)
}

fn type1_orders(d: &DataSet) -> Result<Vec<[ConePair; 3]>> {
    if d.classify()? != ClassKind::Type1Irreducible {
        return Err(Error::NotIrreducibleType1);
    }
    let p = d.pairs();
    let mut out = Vec::new();
    for (i, j, k) in [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 0, 1), (1, 2, 0), (2, 1, 0)] {
        let o = [p[i], p[j], p[k]];
        if o[2].m == d.n && !out.contains(&o) {
            out.push(o);
        }
    }
    Ok(out)
}

fn realize_ordered(n: u32, pairs: &[ConePair; 3]) -> Option<SidePairedPolygon> {
    let [_, p2, p3] = *pairs;
    let n1 = pairs[0].m;
    let ni = n as i64;
    let q = (n / p2.m) as i64 * inv_mod(p3.c as i64, ni)?;
    let j = (p2.m - p2.c) as i64;
    let two = n1 != 2 && p2.m != 2;
    let k = if two { 2 * n as usize } else { n as usize };
    let mut partner: Vec<Option<usize>> = vec![None; k];
    for m in 0..ni {
        let mut z = (m + q * j).rem_euclid(ni);
        if z == 0 {
            z = ni;
        }
        let (a, b) = if two { ((2 * m) as usize, (2 * z - 1) as usize) } else { (m as usize, (z - 1) as usize) };
        if a == b || partner[a].is_some_and(|x| x != b) || partner[b].is_some_and(|x| x != a) {
            return None;
        }
        partner[a] = Some(b);
        partner[b] = Some(a);
    }
    let mut word: Vec<Option<Side>> = vec![None; k];
    let mut next = 0;
    for p in 0..k {
        if word[p].is_none() {
            let q = partner[p]?;
            next += 1;
            word[p] = Some(Side { label: next, inverse: false });
            word[q] = Some(Side { label: next, inverse: true });
        }
    }
    let word: Vec<Side> = word.into_iter().collect::<Option<_>>()?;
    SidePairedPolygon::new(word, next).ok()
}

/// Tries the pair orderings with `(c3, n)` last, canonical order first, and
/// keeps the first whose rotation is a consistent side map.
fn realize_with_order(d: &DataSet) -> Result<(SidePairedPolygon, [ConePair; 3])> {
    let mut last = Error::Realization("no ordering of the pairs gives an involutive side pairing".into());
    for o in type1_orders(d)? {
        if let Some(p) = realize_ordered(d.n, &o) {
            match rotation_map(&p, rotation_shift(&p, d.n, o[2])) {
                Ok(_) => return Ok((p, o)),
                Err(e) => last = e,
            }
        }
    }
    Err(last)
}

/// One step of handle normalization on the unnormalized prefix.
///
/// Letters whose first occurrence is inverted are first renamed to their
/// inverses. For the first letter `a` (by first occurrence) with an
/// interleaving letter `b`, the word `Q a R b S a^-1 T b^-1 U` becomes
/// `Q T S R U x y x^-1 y^-1` with `x = Q T b^-1 U` and
/// `y = U^-1 R^-1 a^-1 T b^-1 U`. The map sends every letter of the new
/// polygon to a combination of letters of the old one.
pub fn normalize_step(p: &SidePairedPolygon) -> Result<(SidePairedPolygon, HomologyMap)> {
    let src = p.letters();
    let idx = |l: u32| src.iter().position(|x| *x == l).expect("letter of the polygon");
    let mut sign: HashMap<u32, i64> = src.iter().map(|l| (*l, 1)).collect();
    let cut = p.word.len() - 4 * p.normalized;
    let mut cur = p.word.clone();
    for i in 0..cut {
        let l = cur[i].label;
        let first = cur[..i].iter().all(|s| s.label != l);
        if first && cur[i].inverse {
            sign.insert(l, -1);
            for s in cur.iter_mut().filter(|s| s.label == l) {
                s.inverse = !s.inverse;
            }
        }
    }
    let pos = |l: u32, inv: bool| cur[..cut].iter().position(|s| s.label == l && s.inverse == inv);
    let mut order: Vec<u32> = Vec::new();
    for s in &cur[..cut] {
        if !order.contains(&s.label) {
            order.push(s.label);
        }
    }
    let mut found = None;
    'outer: for &a in &order {
        let (pa, pai) = (pos(a, false).unwrap(), pos(a, true).unwrap());
        for &b in &order {
            let (pb, pbi) = (pos(b, false).unwrap(), pos(b, true).unwrap());
            if pa < pb && pb < pai && pai < pbi {
                found = Some((a, b, pa, pb, pai, pbi));
                break 'outer;
            }
        }
    }
    let (a, b, pa, pb, pai, pbi) = found.ok_or(Error::NoHandlePattern)?;
    let (q, r, s, t, u) = (&cur[..pa], &cur[pa + 1..pb], &cur[pb + 1..pai], &cur[pai + 1..pbi], &cur[pbi + 1..]);
    // Abelianized word in the old letters (after the orientation flips).
    let chain = |seg: &[Side]| {
        let mut v = vec![0i64; src.len()];
        for x in seg {
            v[idx(x.label)] += if x.inverse { -1 } else { 1 };
        }
        v
    };
    let unit = |l: u32| {
        let mut v = vec![0i64; src.len()];
        v[idx(l)] = 1;
        v
    };
    let add = |vs: &[(i64, Vec<i64>)]| {
        let mut out = vec![0i64; src.len()];
        for (c, v) in vs {
            for (o, x) in out.iter_mut().zip(v) {
                *o += c * x;
            }
        }
        out
    };
    let xv = add(&[(1, chain(q)), (1, chain(t)), (-1, unit(b)), (1, chain(u))]);
    let yv = add(&[(-1, chain(r)), (-1, unit(a)), (1, chain(t)), (-1, unit(b))]);
    let fresh = p.base + 2 * p.normalized as u32 + 1;
    let (x, y) = (fresh, fresh + 1);
    let mut word: Vec<Side> = Vec::with_capacity(cur.len());
    for seg in [q, t, s, r, u] {
        word.extend_from_slice(seg);
    }
    word.extend([
        Side { label: x, inverse: false },
        Side { label: y, inverse: false },
        Side { label: x, inverse: true },
        Side { label: y, inverse: true },
    ]);
    let out = SidePairedPolygon { word, base: p.base, normalized: p.normalized + 1 };
    // Segments were read after the renaming; a renamed letter is `sign` times
    // the old one.
    let to_old = |v: &[i64]| -> Vec<i64> { v.iter().zip(&src).map(|(c, l)| c * sign[l]).collect() };
    let images = out
        .letters()
        .into_iter()
        .map(|l| {
            let v = if l == x {
                to_old(&xv)
            } else if l == y {
                to_old(&yv)
            } else {
                to_old(&unit(l))
            };
            (l, v)
        })
        .collect();
    Ok((out, HomologyMap { source: src, images }))
}

/// Whether `w` is a product of commutators `u v u^-1 v^-1` in distinct letters.
fn is_commutator_product(w: &[Side]) -> bool {
    w.len().is_multiple_of(4)
        && w.chunks(4).all(|c| {
            c[0].label != c[1].label
                && !c[0].inverse
                && !c[1].inverse
                && c[2] == Side { label: c[0].label, inverse: true }
                && c[3] == Side { label: c[1].label, inverse: true }
        })
}

/// Runs normalization steps until the word ends in `g` commutators, then
/// drops the cancelling pairs `l l^-1` left in front. Returns the normal
/// polygon and the map sending its letters `x_1, y_1, ..., x_g, y_g` (in
/// that order) to combinations of the original letters.
///
/// A word that is already a product of commutators is left unchanged and the
/// map is the identity on its letters.
pub fn normalize(p: &SidePairedPolygon) -> Result<(SidePairedPolygon, HomologyMap)> {
    let mut cur = p.clone();
    let mut map = HomologyMap::identity(&p.letters());
    let cut = cur.word.len() - 4 * cur.normalized;
    if is_commutator_product(&cur.word[..cut]) {
        cur.normalized = cur.word.len() / 4;
    }
    while !cur.is_normal() {
        let cut = cur.word.len() - 4 * cur.normalized;
        // Cancelling pairs carry no homology; fold them away first.
        if let Some(i) = (0..cut.saturating_sub(1)).find(|&i| cur.word[i].label == cur.word[i + 1].label) {
            let l = cur.word[i].label;
            cur.word.drain(i..i + 2);
            map.images.retain(|(x, _)| *x != l);
            continue;
        }
        if cut >= 2 && cur.word[0].label == cur.word[cut - 1].label {
            let l = cur.word[0].label;
            cur.word.remove(cut - 1);
            cur.word.remove(0);
            map.images.retain(|(x, _)| *x != l);
            continue;
        }
        let (next, step) = normalize_step(&cur)?;
        map = step.compose(&map);
        cur = next;
    }
    let basis: Vec<u32> = cur.word.chunks(4).flat_map(|c| [c[0].label, c[1].label]).collect();
    let images = basis.iter().map(|l| (*l, map.image(*l).expect("basis letter").to_vec())).collect();
    Ok((cur, HomologyMap { source: map.source, images }))
}

/// Side shift of the rotation: `2 c3^-1` on a `2n`-gon, `c3^-1` on an `n`-gon.
fn rotation_shift(p: &SidePairedPolygon, n: u32, p3: ConePair) -> usize {
    let inv = inv_mod(p3.c as i64, n as i64).expect("c3 is a unit") as usize;
    let k = p.side_count();
    if k == 2 * n as usize {
        (2 * inv) % k
    } else {
        inv % k
    }
}

/// Letter-by-letter action of the rotation: column `l` holds the signed
/// image of letter `l`.
fn rotation_map(p: &SidePairedPolygon, shift: usize) -> Result<IntMatrix> {
    let letters = p.letters();
    let e = letters.len();
    let k = p.side_count();
    let mut phi = IntMatrix::zeros(e, e);
    let mut seen: HashMap<u32, (u32, i64)> = HashMap::new();
    for (pos, s) in p.word.iter().enumerate() {
        let t = p.word[(pos + shift) % k];
        let sgn = if s.inverse == t.inverse { 1 } else { -1 };
        if let Some(prev) = seen.insert(s.label, (t.label, sgn)) {
            if prev != (t.label, sgn) {
                return Err(Error::Realization("rotation is not a side map".into()));
            }
        }
        let col = letters.iter().position(|l| *l == s.label).unwrap();
        let row = letters.iter().position(|l| *l == t.label).unwrap();
        phi[(row, col)] = sgn;
    }
    Ok(phi)
}

/// Everything computed for an irreducible Type 1 data set.
#[derive(Debug, Clone, Serialize)]
pub struct PolygonReport {
    pub data_set: String,
    pub order: [ConePair; 3],
    pub side_count: usize,
    pub boundary_word: String,
    /// Pairs of glued side positions (1-based).
    pub pairing: Vec<(usize, usize)>,
    pub normal_word: String,
    /// `x_i`, `y_i` as combinations of the original letters.
    pub basis: Vec<(String, Vec<i64>)>,
    /// Column convention: column `j` is the image of the `j`-th basis vector.
    pub matrix: Vec<Vec<i64>>,
}

/// The matrix of the rotation on the normalized basis, column convention.
fn type1_column_matrix(d: &DataSet) -> Result<(IntMatrix, PolygonReport)> {
    let (p, ord) = realize_with_order(d)?;
    let g = p.genus();
    let want = d.genus()?;
    if g != want {
        return Err(Error::Realization(format!("polygon has genus {g}, data set {want}")));
    }
    let (normal, map) = normalize(&p)?;
    let letters = p.letters();
    let basis = map.matrix(); // letters x 2g
    let dmat = p.boundary_matrix(&letters);
    if !dmat.mul(&basis).data_is_zero() || !map.is_unimodular() {
        return Err(Error::Realization("normalized letters are not a homology basis".into()));
    }
    let phi = rotation_map(&p, rotation_shift(&p, d.n, ord[2]))?;
    let m = solve_exact(&basis, &phi.mul(&basis))?;
    let pairing = (0..p.side_count())
        .filter_map(|i| {
            let j = p.partner(i);
            (i < j).then_some((i + 1, j + 1))
        })
        .collect();
    let report = PolygonReport {
        data_set: d.to_string(),
        order: ord,
        side_count: p.side_count(),
        boundary_word: p.boundary_word(),
        pairing,
        normal_word: normal.boundary_word(),
        basis: map.images.iter().map(|(l, v)| (normal.letter_name(*l), v.clone())).collect(),
        matrix: m.to_rows(),
    };
    Ok((m, report))
}

/// Solves `B M = C` exactly for an integer `M`, with `B` of full column rank.
fn solve_exact(b: &IntMatrix, c: &IntMatrix) -> Result<IntMatrix> {
    let (rows, k) = (b.rows(), b.cols());
    let w = k + c.cols();
    let mut a: Vec<Vec<Ratio<i128>>> = (0..rows)
        .map(|i| {
            (0..k)
                .map(|j| Ratio::from_integer(b[(i, j)] as i128))
                .chain((0..c.cols()).map(|j| Ratio::from_integer(c[(i, j)] as i128)))
                .collect()
        })
        .collect();
    let mut r = 0;
    #[allow(clippy::explicit_counter_loop)]
    for col in 0..k {
        let piv = (r..rows).find(|&i| a[i][col] != Ratio::from_integer(0));
        let Some(piv) = piv else {
            return Err(Error::Realization("basis is rank deficient".into()));
        };
        a.swap(r, piv);
        let lead = a[r][col];
        for x in a[r].iter_mut() {
            *x /= lead;
        }
        for i in 0..rows {
            if i != r && a[i][col] != Ratio::from_integer(0) {
                let f = a[i][col];
                for j in 0..w {
                    let t = a[r][j] * f;
                    a[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    if a[k..].iter().any(|row| row[k..].iter().any(|x| *x != Ratio::from_integer(0))) {
        return Err(Error::Realization("rotation does not preserve the basis span".into()));
    }
    let mut m = IntMatrix::zeros(k, c.cols());
    for i in 0..k {
        for j in 0..c.cols() {
            let x = a[i][k + j];
            if !x.is_integer() {
                return Err(Error::Realization("non-integral matrix entry".into()));
            }
            m[(i, j)] = *x.numer() as i64;
        }
    }
    Ok(m)
}

/// The symplectic image of the polygon rotation, in the row convention of
/// [`crate::symplectic`] (the transpose of [`polygon_report`]'s matrix).
pub fn symplectic_of_type1(d: &DataSet) -> Result<SympMatrix> {
    let (m, _) = type1_column_matrix(d)?;
    SympMatrix::from_matrix(d.genus()?, m.transpose())
}

/// Realization, normalization and matrix for reporting.
pub fn polygon_report(d: &DataSet) -> Result<PolygonReport> {
    Ok(type1_column_matrix(d)?.1)
}

/// Searches signed permutations `P` of the basis with `P^-1 M P = target`,
/// optionally modulo `modulus`. Returns the permutation as `(index, sign)`
/// images of the basis vectors.
pub fn match_up_to_basis(m: &IntMatrix, target: &IntMatrix, modulus: Option<i64>) -> Option<Vec<(usize, i64)>> {
    let n = m.rows();
    let norm = |x: i64| modulus.map_or(x, |q| x.rem_euclid(q));
    let mut perm: Vec<usize> = (0..n).collect();
    let mut found = None;
    permute(&mut perm, 0, &mut |p| {
        for signs in 0u32..(1 << n) {
            let s = |i: usize| if signs >> i & 1 == 1 { -1 } else { 1 };
            // (P^-1 M P)[i][j] = s_i s_j M[p_i][p_j]
            let ok = (0..n).all(|i| (0..n).all(|j| norm(s(i) * s(j) * m[(p[i], p[j])]) == norm(target[(i, j)])));
            if ok {
                found = Some(p.iter().enumerate().map(|(i, &pi)| (pi, s(i))).collect());
                return true;
            }
        }
        false
    });
    found
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == p.len() {
        return f(p);
    }
    for i in k..p.len() {
        p.swap(k, i);
        if permute(p, k + 1, f) {
            return true;
        }
        p.swap(k, i);
    }
    false
}

trait ZeroCheck {
    fn data_is_zero(&self) -> bool;
}

impl ZeroCheck for IntMatrix {
    fn data_is_zero(&self) -> bool {
        self.max_abs() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{certify_matrix, order, Order};

    fn ds(s: &str) -> DataSet {
        s.parse().unwrap()
    }

    #[test]
    fn realize_nine() {
        let p = realize_type1(&ds("(9,0;(1,3),(1,9),(5,9))")).unwrap();
        assert_eq!(p.side_count(), 18);
        assert_eq!(
            p.boundary_word(),
            "a1 a2 a3 a4 a5 a6 a2^-1 a7 a4^-1 a8 a6^-1 a9 a7^-1 a1^-1 a8^-1 a3^-1 a9^-1 a5^-1"
        );
        assert_eq!(p.genus(), 3);
        // V - E + F = 4 - 9 + 1 = 2 - 2g
        assert_eq!(p.vertex_count(), 4);
    }

    #[test]
    fn n_gon_case() {
        let d = ds("(10,0;(1,2),(2,5),(1,10))");
        let p = realize_type1(&d).unwrap();
        assert_eq!(p.side_count(), 10);
        assert_eq!(p.genus(), 2);
        assert!(matches!(realize_type1(&ds("(2,0;((1,2),6))")), Err(Error::NotIrreducibleType1)));
    }

    #[test]
    fn square_is_normal() {
        let w = [(1, false), (2, false), (1, true), (2, true)].map(|(label, inverse)| Side { label, inverse });
        let p = SidePairedPolygon::new(w.to_vec(), 2).unwrap();
        let (q, map) = normalize(&p).unwrap();
        assert!(q.is_normal());
        assert_eq!(q.boundary_word(), "a1 a2 a1^-1 a2^-1");
        assert_eq!(map.image(1), Some(&[1, 0][..]));
        assert_eq!(map.image(2), Some(&[0, 1][..]));
        // A single step on it still applies the general formulas.
        let (q, step) = normalize_step(&p).unwrap();
        assert_eq!(q.boundary_word(), "x1 y1 x1^-1 y1^-1");
        assert_eq!(step.image(3), Some(&[0, -1][..]));
        assert_eq!(step.image(4), Some(&[-1, -1][..]));
        let bad = [(1, false), (1, true)].map(|(label, inverse)| Side { label, inverse });
        let p = SidePairedPolygon::new(bad.to_vec(), 1).unwrap();
        assert!(matches!(normalize_step(&p), Err(Error::NoHandlePattern)));
    }

    #[test]
    fn normalization_steps() {
        let p = realize_type1(&ds("(9,0;(1,3),(1,9),(5,9))")).unwrap();
        let (q, _) = normalize_step(&p).unwrap();
        assert_eq!(q.side_count(), 18);
        assert!(q.boundary_word().ends_with("x1 y1 x1^-1 y1^-1"));
        let (n, map) = normalize(&p).unwrap();
        assert!(n.boundary_word().ends_with("x1 y1 x1^-1 y1^-1 x2 y2 x2^-1 y2^-1 x3 y3 x3^-1 y3^-1"));
        assert!(map.is_unimodular());
        assert_eq!(map.images.len(), 6);
        assert!(n.is_normal());
        assert_eq!(n.side_count(), 12);
    }

    #[test]
    fn nine_matrix() {
        let d = ds("(9,0;(1,3),(1,9),(5,9))");
        let m = symplectic_of_type1(&d).unwrap();
        assert!(m.is_symplectic());
        assert_eq!(order(&m, 30), Order::Finite(9));
        assert!(certify_matrix(&m, &d).pass);
    }

    #[test]
    fn nine_matrix_matches_worked_example() {
        // Images of x1..y3 as listed in the worked example's f^-1 column.
        let want = IntMatrix::from_cols(&[
            [0, -1, 1, -1, 0, 0],
            [1, -1, 0, 0, 1, -1],
            [0, 0, 1, -1, -1, 1],
            [-1, 1, 2, -1, -2, 2],
            [0, 0, 0, 0, 1, -1],
            [-1, 0, 1, 0, 1, 0],
        ]);
        let r = polygon_report(&ds("(9,0;(1,3),(1,9),(5,9))")).unwrap();
        assert_eq!(IntMatrix::from_rows(&r.matrix), want);
    }

    #[test]
    fn all_irreducible_type1_up_to_genus_4() {
        for g in 2..=4 {
            for d in crate::dataset::enumerate(g, None) {
                if d.classify().unwrap() != ClassKind::Type1Irreducible {
                    continue;
                }
                let m = symplectic_of_type1(&d).unwrap_or_else(|e| panic!("{d}: {e}"));
                assert!(m.is_symplectic(), "{d}");
                assert!(certify_matrix(&m, &d).pass, "{d}");
            }
        }
    }

    #[test]
    fn basis_search() {
        let m = IntMatrix::from_rows(&[[1, 2], [3, 4]]);
        let t = IntMatrix::from_rows(&[[4, -3], [-2, 1]]);
        let p = match_up_to_basis(&m, &t, None).unwrap();
        assert_eq!(p[0].0, 1);
        assert!(match_up_to_basis(&m, &IntMatrix::identity(2), None).is_none());
    }
}
