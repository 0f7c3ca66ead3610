use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use super::LorentzianError;
use crate::linalg::{int, Rational, SymmetricMatrix};
use crate::matroid::{elements_of, Matroid};

pub type Monomial = Vec<u32>;

/// Exponent vectors of a fixed total degree.
pub type SupportSet = BTreeSet<Monomial>;

/// Sparse homogeneous polynomial with exact coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct HomogeneousPolynomial {
    n: usize,
    d: u32,
    terms: BTreeMap<Monomial, Rational>,
}

impl HomogeneousPolynomial {
    pub fn zero(n: usize, d: u32) -> Self {
        HomogeneousPolynomial { n, d, terms: BTreeMap::new() }
    }

    /// Sums repeated monomials and drops zero coefficients.
    pub fn new(n: usize, d: u32, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Result<Self, LorentzianError> {
        let mut f = Self::zero(n, d);
        for (index, (m, c)) in terms.into_iter().enumerate() {
            if m.len() != n {
                return Err(LorentzianError::ExponentLength { term: index, expected: n, found: m.len() });
            }
            let deg: u32 = m.iter().sum();
            if deg != d {
                return Err(LorentzianError::NotHomogeneous { term: index, expected: d, found: deg });
            }
            f.add_term(m, c);
        }
        Ok(f)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn variables(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &[u32]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> SupportSet {
        self.terms.keys().cloned().collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n, self.d);
        }
        HomogeneousPolynomial { n: self.n, d: self.d, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// `∂^m f`; variables past `n` annihilate everything.
    pub fn derivative(&self, m: &[u32]) -> Self {
        let order: u32 = m.iter().sum();
        let d = self.d.saturating_sub(order);
        if m.iter().enumerate().any(|(i, &e)| e > 0 && i >= self.n) || order > self.d {
            return Self::zero(self.n, d);
        }
        let mut out = Self::zero(self.n, d);
        for (mono, c) in &self.terms {
            let mut coeff = c.clone();
            let mut reduced = mono.clone();
            let mut vanishes = false;
            for (i, &e) in m.iter().enumerate() {
                if e > reduced[i] {
                    vanishes = true;
                    break;
                }
                for s in 0..e {
                    coeff *= int((reduced[i] - s) as i64);
                }
                reduced[i] -= e;
            }
            if !vanishes {
                out.add_term(reduced, coeff);
            }
        }
        out
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut m = vec![0; self.n.max(i + 1)];
        m[i] = 1;
        self.derivative(&m)
    }

    pub fn evaluate(&self, w: &[Rational]) -> Result<Rational, LorentzianError> {
        if w.len() != self.n {
            return Err(LorentzianError::PointLength { expected: self.n, found: w.len() });
        }
        Ok(self.terms.iter().map(|(m, c)| m.iter().zip(w).fold(c.clone(), |acc, (&e, x)| acc * pow(x, e))).sum())
    }
}

fn pow(x: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * x)
}

/// `H_f(w) = (∂_i ∂_j f)(w)`.
pub fn hessian(f: &HomogeneousPolynomial, w: &[Rational]) -> Result<SymmetricMatrix<Rational>, LorentzianError> {
    let n = f.variables();
    if w.len() != n {
        return Err(LorentzianError::PointLength { expected: n, found: w.len() });
    }
    let mut h = SymmetricMatrix::zeros(n);
    if f.degree() < 2 {
        return Ok(h);
    }
    for (m, c) in f.terms() {
        for i in 0..n {
            if m[i] == 0 {
                continue;
            }
            for j in i..n {
                let mut e = m.clone();
                let mut coeff = c.clone() * int(e[i] as i64);
                e[i] -= 1;
                if e[j] == 0 {
                    continue;
                }
                coeff *= int(e[j] as i64);
                e[j] -= 1;
                let value = e.iter().zip(w).fold(coeff, |acc, (&p, x)| acc * pow(x, p));
                let updated = h.get(i, j).clone() + value;
                h.set(i, j, updated);
            }
        }
    }
    Ok(h)
}

/// `Δ_n^k` in lexicographically decreasing order.
pub fn simplex(n: usize, k: u32) -> Vec<Monomial> {
    fn rec(n: usize, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(k);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=k).rev() {
            prefix.push(first);
            rec(n, k - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, k, &mut Vec::with_capacity(n), &mut out);
    out
}

/// `Σ_B Π_{x ∈ B} w_x` over the bases of `M`.
pub fn basis_polynomial(mat: &Matroid) -> HomogeneousPolynomial {
    let c = mat.complex();
    let n = c.ground_size();
    let rank = c.rank();
    let terms = c.faces_of_size(rank).iter().map(|&b| {
        let mut m = vec![0u32; n];
        for x in elements_of(b) {
            m[x] = 1;
        }
        (m, Rational::one())
    });
    HomogeneousPolynomial::new(n, rank as u32, terms).expect("bases share the rank")
}

/// Both sides of `g(w) = (1/m) Σ w_i ∂_i g(w)` for `g` of degree `m >= 1`.
pub fn euler_identity(g: &HomogeneousPolynomial, w: &[Rational]) -> Result<(Rational, Rational), LorentzianError> {
    let lhs = g.evaluate(w)?;
    if g.degree() == 0 {
        return Err(LorentzianError::DegreeTooSmall { degree: 0, needed: 1 });
    }
    let mut sum = Rational::zero();
    for (i, wi) in w.iter().enumerate() {
        sum += wi * g.partial(i).evaluate(w)?;
    }
    Ok((lhs, sum / int(g.degree() as i64)))
}

impl fmt::Display for HomogeneousPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let vars: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { format!("w{}", i + 1) } else { format!("w{}^{e}", i + 1) })
                    .collect();
                match (c.is_one(), vars.is_empty()) {
                    (_, true) => c.to_string(),
                    (true, false) => vars.join("*"),
                    (false, false) => format!("{c}*{}", vars.join("*")),
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for HomogeneousPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomogeneousPolynomial(n={}, d={}, {self})", self.n, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{exact_inertia, rational};

    pub(crate) fn poly(n: usize, terms: &[(&[u32], i64)]) -> HomogeneousPolynomial {
        let d = terms.first().map_or(0, |(m, _)| m.iter().sum());
        HomogeneousPolynomial::new(n, d, terms.iter().map(|(m, c)| (m.to_vec(), int(*c)))).unwrap()
    }

    #[test]
    fn derivatives() {
        let f = poly(3, &[(&[1, 1, 0], 1)]);
        assert_eq!(f.derivative(&[1, 0, 0]), poly(3, &[(&[0, 1, 0], 1)]));
        assert!(f.derivative(&[0, 0, 1]).is_zero());
        assert_eq!(f.derivative(&[0, 0, 1]).degree(), 1);
        let g = poly(2, &[(&[2, 1], 1)]);
        assert_eq!(g.derivative(&[2, 0]), poly(2, &[(&[0, 1], 2)]));
        assert!(g.derivative(&[3, 0]).is_zero());
    }

    #[test]
    fn hessians() {
        let w = vec![rational(3, 2), int(5)];
        let f = poly(2, &[(&[1, 1], 1)]);
        assert_eq!(hessian(&f, &w).unwrap().rows(), vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
        let g = poly(2, &[(&[2, 0], 1), (&[0, 2], 1)]);
        assert_eq!(hessian(&g, &w).unwrap(), SymmetricMatrix::diagonal(&[int(2), int(2)]));
        let e3 = poly(3, &[(&[1, 1, 0], 1), (&[1, 0, 1], 1), (&[0, 1, 1], 1)]);
        let h = hessian(&e3, &[int(1), int(2), int(3)]).unwrap();
        let inertia = exact_inertia(&h);
        assert_eq!((inertia.n_pos, inertia.n_neg), (1, 2));
        assert!(hessian(&e3, &[int(1)]).is_err());
    }

    #[test]
    fn hessian_of_cubic_matches_partials() {
        let f = poly(2, &[(&[3, 0], 1), (&[1, 2], 4)]);
        let w = vec![int(2), rational(1, 3)];
        let h = hessian(&f, &w).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(*h.get(i, j), f.partial(i).partial(j).evaluate(&w).unwrap());
            }
        }
    }

    #[test]
    fn simplex_sizes() {
        assert_eq!(simplex(3, 2).len(), 6);
        assert_eq!(simplex(1, 4), vec![vec![4]]);
        assert_eq!(simplex(2, 0), vec![vec![0, 0]]);
        assert_eq!(simplex(0, 0).len(), 1);
    }

    #[test]
    fn basis_polynomials() {
        let u23 = basis_polynomial(&Matroid::uniform(3, 2).unwrap());
        assert_eq!(u23, poly(3, &[(&[1, 1, 0], 1), (&[1, 0, 1], 1), (&[0, 1, 1], 1)]));
        let k3 = basis_polynomial(&Matroid::graphic(&crate::matroid::complete_graph(3)).unwrap());
        assert_eq!(k3, u23);
        assert_eq!(basis_polynomial(&Matroid::uniform(2, 1).unwrap()).degree(), 1);
    }

    #[test]
    fn euler() {
        let f = poly(2, &[(&[3, 0], 2), (&[1, 2], -1)]);
        let (l, r) = euler_identity(&f, &[rational(1, 2), int(7)]).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(HomogeneousPolynomial::new(2, 2, [(vec![1], int(1))]), Err(LorentzianError::ExponentLength { term: 0, .. })));
        assert!(matches!(
            HomogeneousPolynomial::new(2, 2, [(vec![1, 1], int(1)), (vec![1, 0], int(1))]),
            Err(LorentzianError::NotHomogeneous { term: 1, .. })
        ));
        let cancelled = HomogeneousPolynomial::new(2, 2, [(vec![1, 1], int(1)), (vec![1, 1], int(-1))]).unwrap();
        assert!(cancelled.is_zero());
    }
}
