//! Links presented by longitude words, Bing doubling of the Hopf link,
//! split unions, and the Milnor degree of zero surgery on diagonal links.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::linkforms::SymIntMatrix;
use crate::magnus::{
    self, DegreeVerdict, FreeWord, MagnusError, MagnusPolynomial, Monomial, Strictness,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error(transparent)]
    Magnus(#[from] MagnusError),
    #[error("a link needs at least one component")]
    Empty,
    #[error("component {component} out of range 1..={components}")]
    ComponentOutOfRange { component: usize, components: usize },
    #[error("valid_to must be at least 2, got {valid_to}")]
    ValidToTooSmall { valid_to: usize },
    #[error("cap {cap} exceeds the certified degree valid_to = {valid_to}")]
    CapExceedsCertification { cap: usize, valid_to: usize },
    #[error("cannot Bing double component {component}: its meridian occurs in its own longitude")]
    SelfReferentialLongitude { component: usize },
    #[error("{count} labels given for {components} components")]
    LabelCount { count: usize, components: usize },
    #[error("{count} framings given for {components} components")]
    FramingCount { count: usize, components: usize },
    #[error("not a permutation of 1..={components}")]
    BadPermutation { components: usize },
    #[error("linking numbers disagree: lk({i},{j}) = {lk_ij} but lk({j},{i}) = {lk_ji}")]
    AsymmetricLinking {
        i: usize,
        j: usize,
        lk_ij: BigInt,
        lk_ji: BigInt,
    },
    #[error("link is not diagonal: components {i} and {j} have linking number {lk}")]
    NotDiagonal { i: usize, j: usize, lk: BigInt },
    #[error("framing of component {component} is {framing}, zero surgery requires 0")]
    NonzeroFraming { component: usize, framing: i64 },
}

/// An `r`-component link given by one longitude word per component in the
/// free group on its meridians, certified as Milnor words through `valid_to`:
/// they represent the longitudes modulo `F_valid_to`, so degree searches may
/// use any cap up to `valid_to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongitudeLink {
    longitudes: Vec<FreeWord>,
    valid_to: usize,
    labels: Option<Vec<String>>,
}

impl LongitudeLink {
    pub fn new(longitudes: Vec<FreeWord>, valid_to: usize) -> Result<Self, LinkError> {
        let r = longitudes.len();
        if r == 0 {
            return Err(LinkError::Empty);
        }
        if valid_to < 2 {
            return Err(LinkError::ValidToTooSmall { valid_to });
        }
        for w in &longitudes {
            if w.rank() != r {
                return Err(MagnusError::RankMismatch {
                    left: r,
                    right: w.rank(),
                }
                .into());
            }
        }
        Ok(LongitudeLink {
            longitudes,
            valid_to,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, LinkError> {
        if labels.len() != self.components() {
            return Err(LinkError::LabelCount {
                count: labels.len(),
                components: self.components(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// The `r`-component unlink: every longitude trivial.
    pub fn unlink(components: usize, valid_to: usize) -> Result<Self, LinkError> {
        if components == 0 {
            return Err(LinkError::Empty);
        }
        let e = FreeWord::identity(components)?;
        LongitudeLink::new(vec![e; components], valid_to)
    }

    /// The Hopf link `ℓ_1 = m_2`, `ℓ_2 = m_1`.
    pub fn hopf(valid_to: usize) -> Result<Self, LinkError> {
        LongitudeLink::new(
            vec![FreeWord::generator(2, 2)?, FreeWord::generator(2, 1)?],
            valid_to,
        )
    }

    pub fn components(&self) -> usize {
        self.longitudes.len()
    }

    pub fn longitudes(&self) -> &[FreeWord] {
        &self.longitudes
    }

    pub fn longitude(&self, component: usize) -> Result<&FreeWord, LinkError> {
        self.check_component(component)?;
        Ok(&self.longitudes[component - 1])
    }

    pub fn valid_to(&self) -> usize {
        self.valid_to
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Milnor degree searched up to `cap`, which may not exceed `valid_to`.
    pub fn degree(&self, cap: usize) -> Result<DegreeVerdict, LinkError> {
        if cap > self.valid_to {
            return Err(LinkError::CapExceedsCertification {
                cap,
                valid_to: self.valid_to,
            });
        }
        Ok(magnus::link_degree(&self.longitudes, cap)?)
    }

    /// First-nonvanishing `μ̄(I)`; the length of `I` may not exceed `valid_to`.
    pub fn mu_bar(&self, indices: &[usize]) -> Result<BigInt, LinkError> {
        if indices.len() > self.valid_to {
            return Err(LinkError::CapExceedsCertification {
                cap: indices.len(),
                valid_to: self.valid_to,
            });
        }
        Ok(magnus::mu_bar(
            &self.longitudes,
            indices,
            Strictness::Strict,
        )?)
    }

    /// Linking number of components `i` and `j` as read from `ℓ_i`: the
    /// coefficient of `h_j` in `e(ℓ_i)`.
    pub fn linking_number(&self, i: usize, j: usize) -> Result<BigInt, LinkError> {
        self.check_component(i)?;
        self.check_component(j)?;
        Ok(magnus::mu_bar(
            &self.longitudes,
            &[j, i],
            Strictness::Unchecked,
        )?)
    }

    /// Whether all pairwise linking numbers vanish.
    pub fn is_diagonal(&self) -> Result<bool, LinkError> {
        Ok(self.first_linked_pair()?.is_none())
    }

    fn first_linked_pair(&self) -> Result<Option<(usize, usize, BigInt)>, LinkError> {
        let r = self.components();
        for i in 1..=r {
            for j in 1..=r {
                if i == j {
                    continue;
                }
                let lk = self.linking_number(i, j)?;
                if !lk.is_zero() {
                    return Ok(Some((i.min(j), i.max(j), lk)));
                }
            }
        }
        Ok(None)
    }

    /// Relabels components: component `i` of `self` becomes component
    /// `perm[i-1]` of the result.
    pub fn permute(&self, perm: &[usize]) -> Result<Self, LinkError> {
        let r = self.components();
        let mut seen = vec![false; r];
        for &p in perm {
            if p == 0 || p > r || std::mem::replace(&mut seen[p - 1], true) {
                return Err(LinkError::BadPermutation { components: r });
            }
        }
        if perm.len() != r {
            return Err(LinkError::BadPermutation { components: r });
        }
        let mut longitudes = vec![FreeWord::identity(r)?; r];
        for (i, w) in self.longitudes.iter().enumerate() {
            longitudes[perm[i] - 1] = w.substitute(r, |g| {
                FreeWord::generator(r, perm[g - 1]).expect("permutation is in range")
            })?;
        }
        let mut out = LongitudeLink::new(longitudes, self.valid_to)?;
        if let Some(labels) = &self.labels {
            let mut relabeled = labels.clone();
            for (i, l) in labels.iter().enumerate() {
                relabeled[perm[i] - 1] = l.clone();
            }
            out.labels = Some(relabeled);
        }
        Ok(out)
    }

    /// Checks the boundary relation `∏ [m_i, ℓ_i] ∈ F_{degree+2}`, which
    /// holds for the Milnor words of any genuine link when all `ℓ_i ∈ F_degree`.
    /// Longitude data failing it cannot come from a link.
    pub fn satisfies_boundary_relation(&self, degree: usize) -> Result<bool, LinkError> {
        let r = self.components();
        let mut product = FreeWord::identity(r)?;
        for (i, l) in self.longitudes.iter().enumerate() {
            let m = FreeWord::generator(r, i + 1)?;
            product = product.mul(&FreeWord::commutator(&m, l)?)?;
        }
        Ok(magnus::lcs_member(&product, degree + 2))
    }

    fn check_component(&self, component: usize) -> Result<(), LinkError> {
        if component == 0 || component > self.components() {
            Err(LinkError::ComponentOutOfRange {
                component,
                components: self.components(),
            })
        } else {
            Ok(())
        }
    }
}

/// Bing double along component `k` (1-based).
///
/// Component `k` is replaced by `K_1` (keeping index `k`) and `K_2` (new
/// index `r + 1`) with longitudes
///
/// ```text
/// ℓ_{K_1} = [m_{K_2}, ℓ_K]      ℓ_{K_2} = [ℓ_K, m_{K_1}]
/// ```
///
/// and every other longitude has `m_k^{±1}` replaced by `[m_{K_1}, m_{K_2}]^{±1}`.
/// `valid_to` grows by one. The rewriting is certified only on the iterated
/// doubles of the Hopf link, so doubling a component whose meridian appears
/// in its own longitude is rejected.
pub fn bing_double(link: &LongitudeLink, k: usize) -> Result<LongitudeLink, LinkError> {
    link.check_component(k)?;
    let w_k = &link.longitudes[k - 1];
    if w_k.mentions(k) {
        return Err(LinkError::SelfReferentialLongitude { component: k });
    }
    let r = link.components();
    let n = r + 1;
    let m1 = FreeWord::generator(n, k)?;
    let m2 = FreeWord::generator(n, n)?;
    let clasp = FreeWord::commutator(&m1, &m2)?;
    let image = |g: usize| {
        if g == k {
            clasp.clone()
        } else {
            FreeWord::generator(n, g).expect("index below new rank")
        }
    };
    let lifted_k = w_k.substitute(n, image)?;
    let mut longitudes = Vec::with_capacity(n);
    for (i, w) in link.longitudes.iter().enumerate() {
        if i + 1 == k {
            longitudes.push(FreeWord::commutator(&m2, &lifted_k)?);
        } else {
            longitudes.push(w.substitute(n, image)?);
        }
    }
    longitudes.push(FreeWord::commutator(&lifted_k, &m1)?);
    let mut out = LongitudeLink::new(longitudes, link.valid_to + 1)?;
    if let Some(labels) = &link.labels {
        let mut l = labels.clone();
        l[k - 1] = format!("{}a", labels[k - 1]);
        l.push(format!("{}b", labels[k - 1]));
        out.labels = Some(l);
    }
    Ok(out)
}

/// `H^d`: the `(d-1)`-st iterated Bing double of the Hopf link, doubling the
/// newest component each time. Has `d + 1` components and `valid_to = d + 1`.
pub fn hopf_family(d: usize) -> Result<LongitudeLink, LinkError> {
    if d == 0 {
        return Err(LinkError::Empty);
    }
    let mut link = LongitudeLink::hopf(2)?;
    for _ in 1..d {
        let last = link.components();
        link = bing_double(&link, last)?;
    }
    Ok(link)
}

/// Series arithmetic truncated by a weighted degree: `h_newest` weighs
/// `1 + rest`, every other variable weighs 1, and terms heavier than `cap`
/// are dropped. Weight is additive, so pruning factors is exact.
struct Weighted {
    rank: usize,
    cap: usize,
    newest: usize,
    rest: usize,
}

impl Weighted {
    fn weight(&self, m: &Monomial) -> usize {
        m.indices()
            .map(|i| if i == self.newest { 1 + self.rest } else { 1 })
            .sum()
    }

    fn prune(&self, p: &MagnusPolynomial) -> MagnusPolynomial {
        p.retain(|m| self.weight(m) <= self.cap)
    }

    fn gen(&self, i: usize) -> MagnusPolynomial {
        self.prune(&MagnusPolynomial::generator(self.rank, self.cap, i).expect("index in range"))
    }

    fn mul(&self, a: &MagnusPolynomial, b: &MagnusPolynomial) -> MagnusPolynomial {
        let bs: Vec<(Vec<usize>, usize, &BigInt)> = b
            .terms()
            .map(|(m, c)| (m.to_indices(), self.weight(m), c))
            .collect();
        let mut out = MagnusPolynomial::zero(self.rank, self.cap);
        for (ma, ca) in a.terms() {
            let wa = self.weight(ma);
            for (ib, wb, cb) in &bs {
                if wa + wb <= self.cap {
                    let mut idx = ma.to_indices();
                    idx.extend_from_slice(ib);
                    out.add_term(Monomial::from_indices(&idx), ca * *cb);
                }
            }
        }
        out
    }

    fn inverse(&self, p: &MagnusPolynomial) -> MagnusPolynomial {
        let minus_tail = MagnusPolynomial::from_terms(
            self.rank,
            self.cap,
            p.terms()
                .filter(|(m, _)| m.degree() > 0)
                .map(|(m, c)| (m.to_indices(), -c)),
        )
        .expect("same rank");
        let mut out = MagnusPolynomial::one(self.rank, self.cap);
        let mut power = out.clone();
        loop {
            power = self.mul(&power, &minus_tail);
            if power.is_empty() {
                return out;
            }
            for (m, c) in power.terms() {
                out.add_term(m.clone(), c.clone());
            }
        }
    }

    fn commutator(&self, a: &MagnusPolynomial, b: &MagnusPolynomial) -> MagnusPolynomial {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        // [a, b] = ab (ba)^-1
        self.mul(&ab, &self.inverse(&ba))
    }

    /// `h_g ↦ images[g-1]`, images without constant term.
    fn substitute(&self, p: &MagnusPolynomial, images: &[MagnusPolynomial]) -> MagnusPolynomial {
        let mut out = MagnusPolynomial::zero(self.rank, self.cap);
        let mut cache: std::collections::HashMap<Vec<usize>, MagnusPolynomial> =
            std::collections::HashMap::new();
        for (m, c) in p.terms() {
            let idx = m.to_indices();
            let mut acc = MagnusPolynomial::one(self.rank, self.cap);
            for end in 1..=idx.len() {
                acc = match cache.get(&idx[..end]) {
                    Some(q) => q.clone(),
                    None => {
                        let q = self.mul(&acc, &images[idx[end - 1] - 1]);
                        cache.insert(idx[..end].to_vec(), q.clone());
                        q
                    }
                };
                if acc.is_empty() {
                    break;
                }
            }
            for (mm, cc) in acc.terms() {
                out.add_term(mm.clone(), cc * c);
            }
        }
        out
    }
}

/// Magnus expansions `e(ℓ_i)` of the `H^d` longitudes truncated at degree
/// `cap`, built along the doubling recursion rather than from the flattened
/// words.
///
/// Later doublings only substitute the newest meridian, and every term of
/// its image contains the next newest one, so a monomial with `rest`
/// doublings to go ends up in degree at least `deg + rest * #h_newest`;
/// heavier terms are dropped as soon as they appear. Every intermediate
/// series is then small, which reaches ranks where expanding the flat words
/// letter by letter is out of reach. Agrees with `magnus_expand` on
/// [`hopf_family`].
pub fn hopf_family_expansions(d: usize, cap: usize) -> Result<Vec<MagnusPolynomial>, LinkError> {
    if d == 0 {
        return Err(LinkError::Empty);
    }
    let base = Weighted {
        rank: 2,
        cap,
        newest: 2,
        rest: d - 1,
    };
    let mut series = vec![base.gen(2), base.gen(1)];
    for step in 1..d {
        let k = series.len();
        let n = k + 1;
        let alg = Weighted {
            rank: n,
            cap,
            newest: n,
            rest: d - 1 - step,
        };
        let clasp = alg.commutator(&alg.gen(k), &alg.gen(n));
        // h_g ↦ e(φ(m_g)) - 1
        let images: Vec<MagnusPolynomial> = (1..=k)
            .map(|g| if g == k { clasp.clone() } else { alg.gen(g) }.retain(|m| m.degree() > 0))
            .collect();
        let mut next: Vec<MagnusPolynomial> =
            series.iter().map(|e| alg.substitute(e, &images)).collect();
        let lifted = next[k - 1].clone();
        next[k - 1] = alg.commutator(&alg.gen(n), &lifted);
        next.push(alg.commutator(&lifted, &alg.gen(k)));
        series = next;
    }
    Ok(series)
}

/// Disjoint union: the components of `b` follow those of `a`.
pub fn split_union(a: &LongitudeLink, b: &LongitudeLink) -> Result<LongitudeLink, LinkError> {
    let ra = a.components();
    let n = ra + b.components();
    let mut longitudes = Vec::with_capacity(n);
    for w in &a.longitudes {
        longitudes.push(w.embed(n, 0)?);
    }
    for w in &b.longitudes {
        longitudes.push(w.embed(n, ra)?);
    }
    let mut out = LongitudeLink::new(longitudes, a.valid_to.min(b.valid_to))?;
    if let (Some(la), Some(lb)) = (&a.labels, &b.labels) {
        out.labels = Some(la.iter().chain(lb.iter()).cloned().collect());
    }
    Ok(out)
}

/// A link with an integer framing on each component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedLink {
    link: LongitudeLink,
    framings: Vec<i64>,
}

impl FramedLink {
    pub fn new(link: LongitudeLink, framings: Vec<i64>) -> Result<Self, LinkError> {
        if framings.len() != link.components() {
            return Err(LinkError::FramingCount {
                count: framings.len(),
                components: link.components(),
            });
        }
        Ok(FramedLink { link, framings })
    }

    pub fn zero_framed(link: LongitudeLink) -> Self {
        let framings = vec![0; link.components()];
        FramedLink { link, framings }
    }

    pub fn link(&self) -> &LongitudeLink {
        &self.link
    }

    pub fn framings(&self) -> &[i64] {
        &self.framings
    }

    pub fn is_diagonal(&self) -> Result<bool, LinkError> {
        self.link.is_diagonal()
    }

    pub fn zero_sublink_count(&self) -> usize {
        self.framings.iter().filter(|&&f| f == 0).count()
    }

    /// Linking matrix with framings on the diagonal.
    pub fn linking_matrix(&self) -> Result<SymIntMatrix, LinkError> {
        let r = self.link.components();
        let mut rows = vec![vec![BigInt::zero(); r]; r];
        for i in 1..=r {
            rows[i - 1][i - 1] = BigInt::from(self.framings[i - 1]);
            for j in (i + 1)..=r {
                let lk_ij = self.link.linking_number(i, j)?;
                let lk_ji = self.link.linking_number(j, i)?;
                if lk_ij != lk_ji {
                    return Err(LinkError::AsymmetricLinking { i, j, lk_ij, lk_ji });
                }
                rows[i - 1][j - 1] = lk_ij.clone();
                rows[j - 1][i - 1] = lk_ij;
            }
        }
        Ok(SymIntMatrix::new(rows).expect("constructed symmetric"))
    }
}

/// Milnor degree of the manifold obtained by zero surgery on a diagonal
/// link, which equals the degree of the link itself.
///
/// Rejects nonzero framings and linked pairs, naming the violated hypothesis.
pub fn zero_surgery_degree(framed: &FramedLink, cap: usize) -> Result<DegreeVerdict, LinkError> {
    if let Some((i, &f)) = framed.framings.iter().enumerate().find(|(_, f)| **f != 0) {
        return Err(LinkError::NonzeroFraming {
            component: i + 1,
            framing: f,
        });
    }
    if let Some((i, j, lk)) = framed.link.first_linked_pair()? {
        return Err(LinkError::NotDiagonal { i, j, lk });
    }
    framed.link.degree(cap)
}

/// Sum of absolute pairwise linking numbers; zero exactly for diagonal links.
pub fn total_linking(link: &LongitudeLink) -> Result<BigInt, LinkError> {
    let r = link.components();
    let mut total = BigInt::zero();
    for i in 1..=r {
        for j in (i + 1)..=r {
            total += link.linking_number(i, j)?.abs();
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(rank: usize, s: &[(usize, i8)]) -> FreeWord {
        FreeWord::from_pairs(rank, s).unwrap()
    }

    fn comm(rank: usize, a: usize, b: usize) -> FreeWord {
        FreeWord::commutator(
            &FreeWord::generator(rank, a).unwrap(),
            &FreeWord::generator(rank, b).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn doubling_hopf_gives_borromean_words() {
        let b = bing_double(&LongitudeLink::hopf(2).unwrap(), 2).unwrap();
        assert_eq!(b.components(), 3);
        assert_eq!(b.valid_to(), 3);
        assert_eq!(b.longitudes()[0], comm(3, 2, 3));
        assert_eq!(b.longitudes()[1], comm(3, 3, 1));
        assert_eq!(b.longitudes()[2], comm(3, 1, 2));
        assert_eq!(b.degree(3).unwrap().exact(), Some(2));
        assert!(b.satisfies_boundary_relation(2).unwrap());
    }

    #[test]
    fn hopf_family_small_degrees() {
        for d in 1..=4 {
            let h = hopf_family(d).unwrap();
            assert_eq!(h.components(), d + 1);
            assert_eq!(h.degree(d + 1).unwrap().exact(), Some(d), "H^{d}");
            assert!(h.satisfies_boundary_relation(d).unwrap(), "H^{d}");
        }
    }

    #[test]
    fn double_rejects_self_referential_longitude() {
        let l =
            LongitudeLink::new(vec![word(2, &[(1, 1), (2, 1)]), word(2, &[(1, 1)])], 3).unwrap();
        assert_eq!(
            bing_double(&l, 1),
            Err(LinkError::SelfReferentialLongitude { component: 1 })
        );
        assert!(matches!(
            bing_double(&l, 3),
            Err(LinkError::ComponentOutOfRange { .. })
        ));
    }

    #[test]
    fn split_union_takes_min_degree() {
        let hopf = LongitudeLink::hopf(4).unwrap();
        let borr = hopf_family(2).unwrap();
        let u = split_union(&hopf, &borr).unwrap();
        assert_eq!(u.components(), 5);
        assert_eq!(u.degree(3).unwrap().exact(), Some(1));

        let unlink = LongitudeLink::unlink(2, 10).unwrap();
        let h3 = hopf_family(3).unwrap();
        assert_eq!(
            split_union(&unlink, &h3)
                .unwrap()
                .degree(4)
                .unwrap()
                .exact(),
            Some(3)
        );

        let twice = split_union(&borr, &borr).unwrap();
        let v = twice.degree(3).unwrap();
        assert_eq!(v.exact(), Some(2));
    }

    #[test]
    fn zero_surgery_examples() {
        let unlink = FramedLink::zero_framed(LongitudeLink::unlink(2, 5).unwrap());
        assert_eq!(
            zero_surgery_degree(&unlink, 5).unwrap(),
            DegreeVerdict::AtLeast(5)
        );

        let borr = FramedLink::zero_framed(hopf_family(2).unwrap());
        assert_eq!(zero_surgery_degree(&borr, 3).unwrap().exact(), Some(2));

        let hopf = FramedLink::zero_framed(LongitudeLink::hopf(4).unwrap());
        assert!(matches!(
            zero_surgery_degree(&hopf, 4),
            Err(LinkError::NotDiagonal { i: 1, j: 2, .. })
        ));

        let framed = FramedLink::new(hopf_family(2).unwrap(), vec![0, 5, 0]).unwrap();
        assert_eq!(
            zero_surgery_degree(&framed, 3),
            Err(LinkError::NonzeroFraming {
                component: 2,
                framing: 5
            })
        );
    }

    #[test]
    fn cap_beyond_certification_is_rejected() {
        let h = hopf_family(2).unwrap();
        assert!(matches!(
            h.degree(4),
            Err(LinkError::CapExceedsCertification {
                cap: 4,
                valid_to: 3
            })
        ));
    }

    #[test]
    fn linking_matrix_of_framed_hopf() {
        let f = FramedLink::new(LongitudeLink::hopf(2).unwrap(), vec![5, 5]).unwrap();
        let m = f.linking_matrix().unwrap();
        assert_eq!(m.to_i64_rows().unwrap(), vec![vec![5, 1], vec![1, 5]]);
        assert_eq!(f.zero_sublink_count(), 0);
    }

    #[test]
    fn permuting_components_permutes_witness() {
        let b = hopf_family(2).unwrap();
        let p = b.permute(&[3, 1, 2]).unwrap();
        let v = p.degree(3).unwrap();
        assert_eq!(v.exact(), Some(2));
        // μ̄(231) of the original becomes μ̄(123) after relabeling 1→3, 2→1, 3→2
        assert_eq!(p.mu_bar(&[1, 2, 3]).unwrap(), b.mu_bar(&[2, 3, 1]).unwrap());
        assert!(b.permute(&[1, 1, 2]).is_err());
    }

    #[test]
    fn total_linking_detects_hopf() {
        assert_eq!(
            total_linking(&LongitudeLink::hopf(2).unwrap()).unwrap(),
            BigInt::from(1)
        );
        assert!(total_linking(&hopf_family(3).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn recursive_expansions_match_flat_words() {
        for d in 1..=5 {
            let h = hopf_family(d).unwrap();
            let rec = hopf_family_expansions(d, d + 1).unwrap();
            for (w, e) in h.longitudes().iter().zip(&rec) {
                assert_eq!(&magnus::magnus_expand(w, d + 1).unwrap(), e, "d={d}");
            }
            assert_eq!(
                magnus::degree_of_expansions(&rec).unwrap(),
                magnus::link_degree(h.longitudes(), d + 2).unwrap()
            );
        }
    }
}
