//! Coordinate realizations of root systems, generic over the scalar.
//!
//! A realization is a set of simple roots in an ambient space together with
//! the symmetric bilinear form on that space. Crystallographic families use
//! the standard orthonormal models (`e_i - e_j`, `e_i`, `e_i + e_j`, and the
//! Bourbaki models of `F4` and `E6..E8`); `I2(m)`, `H3` and `H4` are realized
//! in the basis of simple roots with the form `<a_r, a_s> = -cos(pi/m_rs)`.

use std::cmp::Ordering;
use std::collections::hash_map::Entry;
use std::collections::HashMap;

use super::SignedRoot;
use crate::descriptor::{CoxeterDescriptor, Family};
use crate::error::{CoxeterError, Result};
use crate::scalar::Scalar;

/// Ceiling on the number of roots produced by closure before giving up.
const CLOSURE_LIMIT: usize = 1 << 20;

/// Simple roots plus the ambient bilinear form.
#[derive(Debug, Clone)]
pub struct SimpleSystem<T> {
    pub ambient_dim: usize,
    pub simple: Vec<Vec<T>>,
    pub gram: Vec<Vec<T>>,
}

impl<T: Scalar> SimpleSystem<T> {
    /// Block-diagonal realization of a product of irreducible types.
    pub fn for_components(components: &[CoxeterDescriptor]) -> Result<Self> {
        let parts = components.iter().map(Self::for_descriptor).collect::<Result<Vec<_>>>()?;
        let ambient_dim = parts.iter().map(|p| p.ambient_dim).sum();
        let mut simple = Vec::new();
        let mut gram = vec![vec![T::zero(); ambient_dim]; ambient_dim];
        let mut offset = 0;
        for p in parts {
            for root in p.simple {
                let mut v = vec![T::zero(); ambient_dim];
                for (k, x) in root.into_iter().enumerate() {
                    v[offset + k] = x;
                }
                simple.push(v);
            }
            for (i, row) in p.gram.into_iter().enumerate() {
                for (j, x) in row.into_iter().enumerate() {
                    gram[offset + i][offset + j] = x;
                }
            }
            offset += p.ambient_dim;
        }
        Ok(SimpleSystem { ambient_dim, simple, gram })
    }

    pub fn for_descriptor(desc: &CoxeterDescriptor) -> Result<Self> {
        if !desc.family.is_crystallographic() {
            return Self::from_coxeter_matrix(desc);
        }
        let int = |k: i64| T::from_i64(k).expect("small integer");
        let half = T::ratio(1, 2);
        let unit = |dim: usize, entries: &[(usize, i64)]| {
            let mut v = vec![T::zero(); dim];
            for &(k, x) in entries {
                v[k] = int(x);
            }
            v
        };
        let n = desc.rank;
        let (dim, simple) = match desc.family {
            Family::A => (n + 1, (0..n).map(|i| unit(n + 1, &[(i, 1), (i + 1, -1)])).collect()),
            Family::B => {
                let mut s: Vec<_> = (0..n - 1).map(|i| unit(n, &[(i, 1), (i + 1, -1)])).collect();
                s.push(unit(n, &[(n - 1, 1)]));
                (n, s)
            }
            Family::D => {
                let mut s: Vec<_> = (0..n - 1).map(|i| unit(n, &[(i, 1), (i + 1, -1)])).collect();
                s.push(unit(n, &[(n - 2, 1), (n - 1, 1)]));
                (n, s)
            }
            Family::F4 => {
                let mut a4 = vec![half.clone(); 4];
                for x in &mut a4[1..] {
                    *x = -half.clone();
                }
                (4, vec![unit(4, &[(1, 1), (2, -1)]), unit(4, &[(2, 1), (3, -1)]), unit(4, &[(3, 1)]), a4])
            }
            Family::E6 | Family::E7 | Family::E8 => {
                let mut a1 = vec![-half.clone(); 8];
                a1[0] = half.clone();
                a1[7] = half.clone();
                let mut s = vec![a1, unit(8, &[(0, 1), (1, 1)])];
                for i in 0..6 {
                    s.push(unit(8, &[(i + 1, 1), (i, -1)]));
                }
                s.truncate(n);
                (8, s)
            }
            Family::I2 | Family::H3 | Family::H4 => unreachable!(),
        };
        let gram = (0..dim).map(|i| unit(dim, &[(i, 1)])).collect();
        Ok(SimpleSystem { ambient_dim: dim, simple, gram })
    }

    fn from_coxeter_matrix(desc: &CoxeterDescriptor) -> Result<Self> {
        if !T::INEXACT {
            return Err(CoxeterError::InvalidDescriptor(format!(
                "{desc} needs real coordinates; exact scalars cannot represent cos(pi/m)"
            )));
        }
        let n = desc.rank;
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let m = desc.coxeter_entry(i, j) as f64;
                        let c = if i == j { 1.0 } else { -(std::f64::consts::PI / m).cos() };
                        T::from_f64(c).expect("finite cosine")
                    })
                    .collect()
            })
            .collect();
        let simple = (0..n).map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect();
        Ok(SimpleSystem { ambient_dim: n, simple, gram })
    }

    pub fn form(&self, u: &[T], v: &[T]) -> T {
        let mut acc = T::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if !vj.is_zero() && !self.gram[i][j].is_zero() {
                    acc = acc + ui.clone() * vj.clone() * self.gram[i][j].clone();
                }
            }
        }
        acc
    }
}

/// A closed root system: positive roots in lexicographically descending
/// coordinate order, with simple-root coefficients and generator tables.
#[derive(Debug, Clone)]
pub struct Embedding<T> {
    pub ambient_dim: usize,
    pub gram: Vec<Vec<T>>,
    /// Ambient coordinates of each positive root.
    pub roots: Vec<Vec<T>>,
    /// Coefficients of each positive root in the simple-root basis.
    pub coefficients: Vec<Vec<T>>,
    /// Index of `alpha_r` among the positive roots.
    pub simple_indices: Vec<usize>,
    /// `tables[r][i]` is the image of positive root `i` under generator `r`.
    pub tables: Vec<Vec<SignedRoot>>,
}

type Key = Vec<(i64, i64)>;

fn key<T: Scalar>(v: &[T]) -> Key {
    v.iter().map(Scalar::snap).collect()
}

fn lex_desc<T: Scalar>(a: &[T], b: &[T]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if x.approx_eq(y) {
            continue;
        }
        return y.partial_cmp(x).unwrap_or(Ordering::Equal);
    }
    Ordering::Equal
}

impl<T: Scalar> Embedding<T> {
    /// Closes the simple roots under the generating reflections
    /// `a -> a - 2 <a_r, a>/<a_r, a_r> a_r`.
    pub fn close(system: &SimpleSystem<T>) -> Result<Self> {
        let rank = system.simple.len();
        let norms: Vec<T> = system.simple.iter().map(|a| system.form(a, a)).collect();
        if norms.iter().any(|n| n.is_negligible() || n.is_negative()) {
            return Err(CoxeterError::Closure("simple root with non-positive norm".into()));
        }

        let unit = |r: usize| -> Vec<T> { (0..rank).map(|k| if k == r { T::one() } else { T::zero() }).collect() };
        let mut coords: Vec<Vec<T>> = system.simple.clone();
        let mut coefs: Vec<Vec<T>> = (0..rank).map(unit).collect();
        let mut seen: HashMap<Key, usize> = HashMap::new();
        for (i, c) in coords.iter().enumerate() {
            if seen.insert(key(c), i).is_some() {
                return Err(CoxeterError::Closure("repeated simple root".into()));
            }
        }

        let mut next = 0;
        while next < coords.len() {
            for r in 0..rank {
                let (img, img_coef) = reflect(system, &norms, r, &coords[next], &coefs[next]);
                let k = key(&img);
                if let Entry::Vacant(e) = seen.entry(k) {
                    e.insert(coords.len());
                    coords.push(img);
                    coefs.push(img_coef);
                    if coords.len() > CLOSURE_LIMIT {
                        return Err(CoxeterError::Closure("root system is not finite".into()));
                    }
                }
            }
            next += 1;
        }

        // Split into positive and negative roots by the sign of coefficients.
        let mut positive = Vec::new();
        for (i, c) in coefs.iter().enumerate() {
            let pos = c.iter().all(|x| !x.is_strictly_negative());
            let neg = c.iter().all(|x| !(x.is_positive() && !x.is_negligible()));
            match (pos, neg) {
                (true, false) => positive.push(i),
                (false, true) => {}
                _ => return Err(CoxeterError::Closure(format!("root {i} is neither positive nor negative"))),
            }
        }
        if positive.len() * 2 != coords.len() {
            return Err(CoxeterError::Closure("positive and negative roots are unbalanced".into()));
        }
        positive.sort_by(|&a, &b| lex_desc(&coords[a], &coords[b]));

        let roots: Vec<Vec<T>> = positive.iter().map(|&i| coords[i].clone()).collect();
        let coefficients: Vec<Vec<T>> = positive.iter().map(|&i| coefs[i].clone()).collect();
        let mut lookup: HashMap<Key, SignedRoot> = HashMap::new();
        for (i, v) in roots.iter().enumerate() {
            lookup.insert(key(v), SignedRoot::positive(i));
            let neg: Vec<T> = v.iter().map(|x| -x.clone()).collect();
            lookup.insert(key(&neg), SignedRoot::negative(i));
        }

        let simple_indices = system
            .simple
            .iter()
            .map(|a| match lookup.get(&key(a)) {
                Some(s) if !s.is_negative() => Ok(s.index()),
                _ => Err(CoxeterError::Closure("simple root missing after closure".into())),
            })
            .collect::<Result<Vec<_>>>()?;

        let mut tables = Vec::with_capacity(rank);
        for r in 0..rank {
            let mut row = Vec::with_capacity(roots.len());
            for (i, v) in roots.iter().enumerate() {
                let (img, _) = reflect(system, &norms, r, v, &coefficients[i]);
                let s = *lookup
                    .get(&key(&img))
                    .ok_or_else(|| CoxeterError::Closure("reflection leaves the root set".into()))?;
                row.push(s);
            }
            tables.push(row);
        }

        let emb = Embedding {
            ambient_dim: system.ambient_dim,
            gram: system.gram.clone(),
            roots,
            coefficients,
            simple_indices,
            tables,
        };
        emb.check_form_preserved(system, &norms)?;
        Ok(emb)
    }

    /// The action respects the form on simple roots.
    fn check_form_preserved(&self, system: &SimpleSystem<T>, norms: &[T]) -> Result<()> {
        let rank = system.simple.len();
        let unit = |s: usize| -> Vec<T> { (0..rank).map(|k| if k == s { T::one() } else { T::zero() }).collect() };
        for r in 0..rank {
            let images: Vec<Vec<T>> =
                (0..rank).map(|s| reflect(system, norms, r, &system.simple[s], &unit(s)).0).collect();
            for s in 0..rank {
                for t in 0..rank {
                    let before = system.form(&system.simple[s], &system.simple[t]);
                    let after = system.form(&images[s], &images[t]);
                    if !before.approx_eq(&after) {
                        return Err(CoxeterError::Closure(format!("generator {r} does not preserve the form")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.simple_indices.len()
    }

    /// Ambient coordinates of a signed root.
    pub fn signed_coords(&self, s: SignedRoot) -> Vec<T> {
        let v = &self.roots[s.index()];
        if s.is_negative() {
            v.iter().map(|x| -x.clone()).collect()
        } else {
            v.clone()
        }
    }

    /// Matrix of an element in the simple-root basis acting on row
    /// vectors: row `r` holds the coefficients of `alpha_r . w`.
    pub fn matrix(&self, images_of_simple: &[SignedRoot]) -> Vec<Vec<T>> {
        images_of_simple
            .iter()
            .map(|s| {
                let c = &self.coefficients[s.index()];
                if s.is_negative() {
                    c.iter().map(|x| -x.clone()).collect()
                } else {
                    c.clone()
                }
            })
            .collect()
    }

    /// Basis of `{v : v M = v}` in simple-root coefficients.
    pub fn fixed_coefficient_basis(&self, matrix: &[Vec<T>]) -> Vec<Vec<T>> {
        let n = matrix.len();
        // v (M - I) = 0  <=>  (M - I)^T v^T = 0
        let a: Vec<Vec<T>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let x = matrix[j][i].clone();
                        if i == j {
                            x - T::one()
                        } else {
                            x
                        }
                    })
                    .collect()
            })
            .collect();
        null_space(a)
    }

    /// Converts simple-root coefficients to ambient coordinates.
    pub fn to_ambient(&self, coefficients: &[T]) -> Vec<T> {
        let mut v = vec![T::zero(); self.ambient_dim];
        for (r, c) in coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let simple = &self.roots[self.simple_indices[r]];
            for (k, x) in simple.iter().enumerate() {
                v[k] = v[k].clone() + c.clone() * x.clone();
            }
        }
        v
    }
}

fn reflect<T: Scalar>(system: &SimpleSystem<T>, norms: &[T], r: usize, v: &[T], coef: &[T]) -> (Vec<T>, Vec<T>) {
    let alpha = &system.simple[r];
    let two = T::one() + T::one();
    let mut c = two * system.form(alpha, v) / norms[r].clone();
    if T::INEXACT {
        // Crystallographic structure constants are integers; snap those so
        // f64 realizations of B/D/F/E stay exact.
        let rounded = c.to_f64().map(f64::round).and_then(T::from_f64);
        if let Some(rc) = rounded {
            if rc.approx_eq(&c) {
                c = rc;
            }
        }
    }
    let img = v.iter().zip(alpha).map(|(x, a)| x.clone() - c.clone() * a.clone()).collect();
    let mut img_coef = coef.to_vec();
    img_coef[r] = img_coef[r].clone() - c;
    (img, img_coef)
}

/// Null space of `a` (as column vectors `x` with `a x = 0`), by reduced
/// row echelon form with partial pivoting.
pub fn null_space<T: Scalar>(mut a: Vec<Vec<T>>) -> Vec<Vec<T>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let best = (row..rows)
            .filter(|&r| !a[r][col].is_negligible())
            .max_by(|&p, &q| a[p][col].abs().partial_cmp(&a[q][col].abs()).unwrap_or(Ordering::Equal));
        let Some(p) = best else { continue };
        a.swap(row, p);
        let inv = T::one() / a[row][col].clone();
        for x in a[row].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..rows {
            if r != row && !a[r][col].is_negligible() {
                let f = a[r][col].clone();
                for c in 0..cols {
                    let sub = f.clone() * a[row][c].clone();
                    a[r][c] = a[r][c].clone() - sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); cols];
            v[f] = T::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Rank of a matrix over `T`.
pub fn rank<T: Scalar>(a: Vec<Vec<T>>) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    cols - null_space(a).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;
    use num_traits::ToPrimitive;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn null_space_of_rank_one() {
        let a = vec![vec![r(1, 1), r(2, 1), r(3, 1)], vec![r(2, 1), r(4, 1), r(6, 1)]];
        let ns = null_space(a.clone());
        assert_eq!(ns.len(), 2);
        for v in ns {
            for row in &a {
                let dot: Rational64 = row.iter().zip(&v).map(|(x, y)| x * y).sum();
                assert_eq!(dot, r(0, 1));
            }
        }
    }

    #[test]
    fn rank_of_identity() {
        let id: Vec<Vec<f64>> = (0..4).map(|i| (0..4).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        assert_eq!(rank(id), 4);
    }

    #[test]
    fn exact_scalars_refuse_h3() {
        let d = CoxeterDescriptor::exceptional(Family::H3);
        assert!(SimpleSystem::<Rational64>::for_descriptor(&d).is_err());
        assert!(SimpleSystem::<f64>::for_descriptor(&d).is_ok());
    }

    #[test]
    fn simple_roots_have_the_right_angles() {
        for s in ["A3", "B4", "D5", "F4", "E6", "E7", "E8"] {
            let d: CoxeterDescriptor = s.parse().unwrap();
            let sys = SimpleSystem::<Rational64>::for_descriptor(&d).unwrap();
            let norms: Vec<f64> = sys.simple.iter().map(|a| sys.form(a, a).to_f64().unwrap()).collect();
            for i in 0..d.rank {
                for j in 0..d.rank {
                    if i == j {
                        continue;
                    }
                    let ip = sys.form(&sys.simple[i], &sys.simple[j]).to_f64().unwrap();
                    let cos = -ip / (norms[i] * norms[j]).sqrt();
                    let m = d.coxeter_entry(i, j) as f64;
                    assert!((cos - (std::f64::consts::PI / m).cos()).abs() < 1e-12, "{s} ({i},{j})");
                }
            }
        }
    }
}
