//! Buchberger's algorithm on submodules of free modules, position-over-term.
//! Ideals are the rank-one case.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Monomial, MonomialOrder, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub comp: usize,
    pub mon: Monomial,
    pub coeff: Rational,
}

/// Terms sorted strictly descending in the module order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Vector {
    pub terms: Vec<Term>,
}

pub(crate) trait TermOrder {
    fn cmp_mon(&self, a: &Monomial, b: &Monomial) -> Ordering;

    /// Whether a leading monomial makes a rank-one generator a unit.
    fn is_unit_lead(&self, m: &Monomial) -> bool {
        m.is_one()
    }
}

impl TermOrder for MonomialOrder {
    fn cmp_mon(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp(a, b)
    }
}

/// Order on homogenised monomials (the last variable is the homogenising one):
/// total degree first, then the original order on the remaining variables.
/// On a homogeneous vector the leading term is therefore the homogenisation of
/// the original leading term, which is what makes dehomogenising a basis work
/// for every original order.
struct Homogenised<'a>(&'a MonomialOrder);

impl TermOrder for Homogenised<'_> {
    fn cmp_mon(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exps(), b.exps());
        let n = a.len() - 1;
        let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
        da.cmp(&db).then_with(|| self.0.cmp_exps(&a[..n], &b[..n]))
    }

    fn is_unit_lead(&self, m: &Monomial) -> bool {
        let e = m.exps();
        e[..e.len() - 1].iter().all(|&x| x == 0)
    }
}

/// Position over term: a lower component index is larger.
pub(crate) fn cmp_pos<O: TermOrder + ?Sized>(order: &O, c1: usize, m1: &Monomial, c2: usize, m2: &Monomial) -> Ordering {
    c2.cmp(&c1).then_with(|| order.cmp_mon(m1, m2))
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn from_polys(polys: &[Polynomial], order: &MonomialOrder) -> Self {
        let mut terms: Vec<Term> = polys
            .iter()
            .enumerate()
            .flat_map(|(comp, p)| p.terms().map(move |(m, c)| Term { comp, mon: m.clone(), coeff: c.clone() }))
            .collect();
        terms.sort_by(|a, b| cmp_pos(order, b.comp, &b.mon, a.comp, &a.mon));
        Vector { terms }
    }

    pub fn from_poly(p: &Polynomial, order: &MonomialOrder) -> Self {
        Self::from_polys(core::slice::from_ref(p), order)
    }

    pub fn to_polys(&self, rank: usize, nvars: usize) -> Vec<Polynomial> {
        let mut out: Vec<Polynomial> = (0..rank).map(|_| Polynomial::zero(nvars)).collect();
        for t in &self.terms {
            out[t.comp].add_term(t.mon.clone(), t.coeff.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &Term {
        &self.terms[0]
    }

    fn make_monic(&mut self) {
        if let Some(t) = self.terms.first() {
            if !t.coeff.is_one() {
                let inv = t.coeff.recip();
                for t in &mut self.terms {
                    t.coeff *= &inv;
                }
            }
        }
    }

    /// Scales to integer coefficients with content one and a positive lead.
    /// Working with these instead of monic vectors keeps denominators out.
    fn make_primitive(&mut self) {
        let Some(first) = self.terms.first() else { return };
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for t in &self.terms {
            den = den.lcm(t.coeff.denom());
            num = num.gcd(t.coeff.numer());
        }
        let mut f = Rational::new(den, num);
        if first.coeff.is_negative() {
            f = -f;
        }
        if !f.is_one() {
            for t in &mut self.terms {
                t.coeff *= &f;
            }
        }
    }

    fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].mon.degree() == w[1].mon.degree())
    }

    /// Appends a homogenising variable. Term order is unchanged: at equal total
    /// degree the homogenised order compares exactly as the original one.
    fn homogenise(&self) -> Vector {
        let d = max_degree(self);
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let n = t.mon.nvars();
                let mut m = t.mon.extend(n + 1);
                m.set(n, d - t.mon.degree());
                Term { comp: t.comp, mon: m, coeff: t.coeff.clone() }
            })
            .collect();
        Vector { terms }
    }

    /// Sets the homogenising variable to one. On a homogeneous vector distinct
    /// terms keep distinct monomials, in the same order.
    fn dehomogenise(&self) -> Vector {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let e = t.mon.exps();
                Term { comp: t.comp, mon: Monomial::from_exps(&e[..e.len() - 1]), coeff: t.coeff.clone() }
            })
            .collect();
        Vector { terms }
    }

    /// `self[start..] -= c * q * g`, merging in order.
    fn sub_mul_from<O: TermOrder + ?Sized>(&mut self, start: usize, c: &Rational, q: &Monomial, g: &Vector, order: &O) {
        let tail = self.terms.split_off(start);
        let mut out = Vec::with_capacity(tail.len() + g.terms.len());
        let mut a = tail.into_iter().peekable();
        let mut b = g.terms.iter().map(|t| Term { comp: t.comp, mon: t.mon.mul(q), coeff: -(&t.coeff * c) }).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => cmp_pos(order, x.comp, &x.mon, y.comp, &y.mon),
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap()),
                Ordering::Less => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let mut x = a.next().unwrap();
                    let y = b.next().unwrap();
                    x.coeff += y.coeff;
                    if !x.coeff.is_zero() {
                        out.push(x);
                    }
                }
            }
        }
        self.terms.extend(out);
    }
}

fn find_divisor(basis: &[Vector], active: &[bool], t: &Term) -> Option<usize> {
    basis.iter().enumerate().position(|(i, g)| {
        active[i] && {
            let l = g.lead();
            l.comp == t.comp && l.mon.divides(&t.mon)
        }
    })
}

/// Reduces `f` by the active basis elements. With `full`, every term is reduced;
/// otherwise only the leading term (top reduction). `max_comp` restricts which
/// components are touched: terms in components `>= max_comp` are left alone.
pub(crate) fn reduce<O: TermOrder + ?Sized>(
    mut f: Vector,
    basis: &[Vector],
    active: &[bool],
    order: &O,
    full: bool,
    max_comp: usize,
) -> Vector {
    let mut i = 0;
    while i < f.terms.len() {
        let t = &f.terms[i];
        if t.comp >= max_comp {
            break;
        }
        match find_divisor(basis, active, t) {
            Some(j) => {
                let g = &basis[j];
                let q = g.lead().mon.quotient_of(&t.mon);
                let c = &t.coeff / &g.lead().coeff;
                f.sub_mul_from(i, &c, &q, g, order);
            }
            None => {
                if !full {
                    break;
                }
                i += 1;
            }
        }
    }
    f
}

struct Pair {
    i: usize,
    j: usize,
    comp: usize,
    lcm: Monomial,
    /// Degree the S-vector would have if everything were homogenised.
    sugar: u32,
}

struct Engine<'a, O: ?Sized> {
    order: &'a O,
    ideal: bool,
    basis: Vec<Vector>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

fn coeff_bits(v: &Vector) -> u64 {
    v.terms.iter().map(|t| t.coeff.numer().bits() + t.coeff.denom().bits()).sum()
}

fn max_degree(v: &Vector) -> u32 {
    v.terms.iter().map(|t| t.mon.degree()).max().unwrap_or(0)
}

impl<O: TermOrder + ?Sized> Engine<'_, O> {
    fn update(&mut self, h: Vector, sugar: u32) {
        let hi = self.basis.len();
        let hl = h.lead().clone();
        let mut cands: Vec<(usize, Monomial, bool)> = Vec::new();
        for (j, g) in self.basis.iter().enumerate() {
            if self.active[j] && g.lead().comp == hl.comp {
                let gm = &g.lead().mon;
                cands.push((j, hl.mon.lcm(gm), self.ideal && hl.mon.coprime(gm)));
            }
        }
        // Gebauer–Möller: discard pairs whose lcm is a proper multiple of another's.
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        let mut rest = cands;
        while !rest.is_empty() {
            let (j, l, coprime) = rest.remove(0);
            let dominated = rest.iter().chain(kept.iter()).any(|(_, l2, _)| l2.divides(&l));
            if coprime || !dominated {
                kept.push((j, l, coprime));
            }
        }
        self.pairs.retain(|p| {
            !(p.comp == hl.comp
                && hl.mon.divides(&p.lcm)
                && hl.mon.lcm(&self.basis[p.i].lead().mon) != p.lcm
                && hl.mon.lcm(&self.basis[p.j].lead().mon) != p.lcm)
        });
        for (j, l, coprime) in kept {
            if !coprime {
                let d = l.degree();
                let s = (self.sugar[j] + d - self.basis[j].lead().mon.degree()).max(sugar + d - hl.mon.degree());
                self.pairs.push(Pair { i: j, j: hi, comp: hl.comp, lcm: l, sugar: s });
            }
        }
        for j in 0..self.basis.len() {
            if self.active[j] {
                let g = self.basis[j].lead();
                if g.comp == hl.comp && hl.mon.divides(&g.mon) {
                    self.active[j] = false;
                }
            }
        }
        self.basis.push(h);
        self.sugar.push(sugar);
        self.active.push(true);
    }

    /// Reduces the tails of the active elements by the newest one. Leads are
    /// untouched, so pending pairs stay valid.
    fn reduce_tails(&mut self) {
        let n = self.basis.len() - 1;
        let hl = self.basis[n].lead().clone();
        let only_new: Vec<bool> = (0..=n).map(|j| j == n).collect();
        for j in 0..n {
            if !self.active[j] || !self.basis[j].terms[1..].iter().any(|t| t.comp == hl.comp && hl.mon.divides(&t.mon)) {
                continue;
            }
            let v = core::mem::replace(&mut self.basis[j], Vector::zero());
            let head = v.terms[0].clone();
            let tail = reduce(Vector { terms: v.terms[1..].to_vec() }, &self.basis, &only_new, self.order, true, usize::MAX);
            let mut r = Vector { terms: alloc::vec![head] };
            r.terms.extend(tail.terms);
            r.make_primitive();
            self.basis[j] = r;
        }
    }

    fn spoly(&self, p: &Pair) -> Vector {
        let (f, g) = (&self.basis[p.i], &self.basis[p.j]);
        let qf = f.lead().mon.quotient_of(&p.lcm);
        let qg = g.lead().mon.quotient_of(&p.lcm);
        let mut s = Vector {
            terms: f.terms.iter().map(|t| Term { comp: t.comp, mon: t.mon.mul(&qf), coeff: &t.coeff / &f.lead().coeff }).collect(),
        };
        let c = g.lead().coeff.recip();
        s.sub_mul_from(0, &c, &qg, g, self.order);
        s
    }

    fn is_unit(&self, v: &Vector) -> bool {
        self.ideal && self.order.is_unit_lead(&v.lead().mon)
    }
}

/// A Gröbner basis (not yet reduced) of the submodule generated by `gens`, or
/// `Err` with a unit when a rank-one input turns out to be the whole ring.
fn buchberger<O: TermOrder + ?Sized>(gens: Vec<Vector>, order: &O, ideal: bool) -> Result<Vec<Vector>, Vector> {
    let mut gens = gens;
    gens.sort_by(|a, b| {
        let (x, y) = (a.lead(), b.lead());
        cmp_pos(order, x.comp, &x.mon, y.comp, &y.mon)
    });
    let mut e = Engine { order, ideal, basis: Vec::new(), sugar: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    // a generator that reduces to zero is dropped; otherwise whichever of it and
    // its remainder has smaller coefficients goes in
    for mut g in gens {
        let sugar = max_degree(&g);
        g.make_primitive();
        let mut h = reduce(g.clone(), &e.basis, &e.active, order, false, usize::MAX);
        if h.is_zero() {
            continue;
        }
        h.make_primitive();
        let g = if coeff_bits(&h) < coeff_bits(&g) { h } else { g };
        if e.is_unit(&g) {
            return Err(g);
        }
        e.update(g, sugar);
    }
    // sugar strategy: smallest sugar first, ties by the module order of the lcm
    while !e.pairs.is_empty() {
        let mut best = 0;
        for k in 1..e.pairs.len() {
            let (a, b) = (&e.pairs[k], &e.pairs[best]);
            if a.sugar.cmp(&b.sugar).then_with(|| cmp_pos(order, a.comp, &a.lcm, b.comp, &b.lcm)) == Ordering::Less {
                best = k;
            }
        }
        let p = e.pairs.swap_remove(best);
        let s = e.spoly(&p);
        let mut h = reduce(s, &e.basis, &e.active, order, true, usize::MAX);
        if !h.is_zero() {
            h.make_primitive();
            if e.is_unit(&h) {
                return Err(h);
            }
            let sugar = p.sugar.max(max_degree(&h));
            e.update(h, sugar);
            e.reduce_tails();
        }
    }
    Ok(e.basis.into_iter().zip(e.active).filter(|(_, a)| *a).map(|(v, _)| v).collect())
}

/// Reduced Gröbner basis (monic, sorted by ascending leading term) of the
/// submodule generated by `gens`.
pub(crate) fn groebner(gens: Vec<Vector>, order: &MonomialOrder, rank: usize) -> Vec<Vector> {
    let gens: Vec<Vector> = gens.into_iter().filter(|v| !v.is_zero()).collect();
    let ideal = rank == 1;
    let found = if gens.iter().all(Vector::is_homogeneous) {
        buchberger(gens, order, ideal)
    } else {
        // degree drops in inhomogeneous input turn Buchberger into something like
        // a Euclidean remainder sequence, with coefficients doubling at each step;
        // the homogenised computation proceeds degree by degree instead
        let hom: Vec<Vector> = gens.iter().map(Vector::homogenise).collect();
        buchberger(hom, &Homogenised(order), ideal)
            .map(|b| b.iter().map(Vector::dehomogenise).collect())
            .map_err(|u| u.dehomogenise())
    };
    let out = match found {
        Ok(b) => b,
        Err(mut unit) => {
            unit.make_monic();
            return alloc::vec![unit];
        }
    };
    // generators inserted without full reduction, and dehomogenised elements, may
    // sit above another lead; keep a minimal set
    let leads: Vec<Term> = out.iter().map(|v| v.lead().clone()).collect();
    let keep: Vec<bool> = (0..out.len())
        .map(|k| {
            !(0..out.len()).any(|j| {
                j != k
                    && leads[j].comp == leads[k].comp
                    && leads[j].mon.divides(&leads[k].mon)
                    && (leads[j].mon != leads[k].mon || j < k)
            })
        })
        .collect();
    let mut out: Vec<Vector> = out.into_iter().zip(keep).filter(|(_, k)| *k).map(|(v, _)| v).collect();
    for v in &mut out {
        v.make_monic();
    }
    // interreduce tails
    for k in 0..out.len() {
        let mut act = alloc::vec![true; out.len()];
        act[k] = false;
        let v = core::mem::replace(&mut out[k], Vector::zero());
        let mut head = Vector { terms: alloc::vec![v.terms[0].clone()] };
        let tail = Vector { terms: v.terms[1..].to_vec() };
        let tail = reduce(tail, &out, &act, order, true, usize::MAX);
        head.terms.extend(tail.terms);
        out[k] = head;
    }
    out.sort_by(|a, b| {
        let (x, y) = (a.lead(), b.lead());
        cmp_pos(order, x.comp, &x.mon, y.comp, &y.mon)
    });
    out
}

/// Reduces `f` completely modulo a reduced basis (all elements active).
pub(crate) fn normal_form(f: Vector, basis: &[Vector], order: &MonomialOrder) -> Vector {
    let active = alloc::vec![true; basis.len()];
    reduce(f, basis, &active, order, true, usize::MAX)
}
