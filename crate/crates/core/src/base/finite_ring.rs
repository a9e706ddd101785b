//! Finite commutative rings with complete element enumeration.
//!
//! Elements are indices `0..card`; index 0 is always zero. Rings built from
//! specs carry an additive basis over `Z/m_i` with structure constants;
//! quotients and subrings are stored as full operation tables.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::poly::field::{is_prime, PrimeField};
use crate::poly::{Field, Groebner, Monomial, MonomialOrder, Poly, QPoly};

/// Largest ring the enumerations accept.
pub const MAX_CARDINALITY: usize = 4096;
/// Rings up to this size cache full operation tables.
const TABLE_CACHE_LIMIT: usize = 1024;

#[derive(Debug, Clone)]
struct BasisRepr {
    moduli: Vec<u64>,
    /// e_i * e_j = sum_k structure[i][j][k] e_k
    structure: Vec<Vec<Vec<u64>>>,
    labels: Vec<String>,
    /// Basis index ranges of the product factors (one range if not a product).
    blocks: Vec<(usize, usize)>,
}

#[derive(Debug, Clone)]
struct TableRepr {
    add: Vec<u16>,
    mul: Vec<u16>,
    labels: Vec<String>,
}

#[derive(Debug, Clone)]
enum Repr {
    Basis(BasisRepr),
    Table(TableRepr),
}

#[derive(Debug)]
struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
}

/// A finite commutative ring.
#[derive(Debug)]
pub struct FiniteRing {
    name: String,
    card: usize,
    one: usize,
    repr: Repr,
    /// Named generators usable in element expressions (single-factor rings).
    generators: Vec<(String, usize)>,
    tables: OnceLock<Option<Tables>>,
    nilradical: OnceLock<Ideal>,
    characteristic: OnceLock<u64>,
}

impl Clone for FiniteRing {
    fn clone(&self) -> Self {
        FiniteRing {
            name: self.name.clone(),
            card: self.card,
            one: self.one,
            repr: self.repr.clone(),
            generators: self.generators.clone(),
            tables: OnceLock::new(),
            nilradical: OnceLock::new(),
            characteristic: OnceLock::new(),
        }
    }
}

/// An ideal, as a set of element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Ideal {
    elements: Vec<usize>,
}

impl Ideal {
    pub fn zero() -> Self {
        Ideal { elements: vec![0] }
    }

    fn from_members(member: &[bool]) -> Self {
        Ideal { elements: member.iter().enumerate().filter(|(_, m)| **m).map(|(i, _)| i).collect() }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.elements == [0]
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }
}

fn encode(coords: &[u64], moduli: &[u64]) -> usize {
    let mut idx = 0usize;
    for (c, m) in coords.iter().zip(moduli).rev() {
        idx = idx * *m as usize + *c as usize;
    }
    idx
}

fn decode(mut idx: usize, moduli: &[u64]) -> Vec<u64> {
    moduli
        .iter()
        .map(|&m| {
            let c = (idx % m as usize) as u64;
            idx /= m as usize;
            c
        })
        .collect()
}

impl BasisRepr {
    fn card(&self) -> u128 {
        self.moduli.iter().map(|&m| m as u128).product()
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (decode(a, &self.moduli), decode(b, &self.moduli));
        let s: Vec<u64> = x.iter().zip(&y).zip(&self.moduli).map(|((a, b), m)| (a + b) % m).collect();
        encode(&s, &self.moduli)
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let (x, y) = (decode(a, &self.moduli), decode(b, &self.moduli));
        let d = self.moduli.len();
        let mut out = vec![0u128; d];
        for i in 0..d {
            if x[i] == 0 {
                continue;
            }
            for j in 0..d {
                if y[j] == 0 {
                    continue;
                }
                let xy = x[i] as u128 * y[j] as u128;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.structure[i][j][k];
                    if c != 0 {
                        *o = (*o + xy * c as u128) % self.moduli[k] as u128;
                    }
                }
            }
        }
        let out: Vec<u64> = out.into_iter().map(|v| v as u64).collect();
        encode(&out, &self.moduli)
    }

    fn label(&self, a: usize) -> String {
        let x = decode(a, &self.moduli);
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|&(s, e)| {
                let mut terms = Vec::new();
                for i in (s..e).rev() {
                    let c = x[i];
                    if c == 0 {
                        continue;
                    }
                    let l = &self.labels[i];
                    terms.push(match (c, l.as_str()) {
                        (_, "1") => c.to_string(),
                        (1, _) => l.clone(),
                        _ => format!("{c}*{l}"),
                    });
                }
                if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join(" + ")
                }
            })
            .collect();
        if parts.len() == 1 {
            parts.into_iter().next().unwrap()
        } else {
            format!("({})", parts.join(", "))
        }
    }

    /// Structural checks on the basis: well-defined products, commutativity,
    /// associativity and the unit, all of which extend bilinearly.
    fn verify(&self, one: usize) -> Result<()> {
        let d = self.moduli.len();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let c = self.structure[i][j][k];
                    if !(c as u128 * self.moduli[i] as u128).is_multiple_of(self.moduli[k] as u128) {
                        return Err(Error::NotARing(format!("e{i}*e{j} is not killed by the order of e{i}")));
                    }
                    if c != self.structure[j][i][k] {
                        return Err(Error::NotARing("structure constants are not commutative".into()));
                    }
                }
            }
        }
        let unit_vec = |i: usize| {
            let mut v = vec![0u64; d];
            v[i] = 1;
            encode(&v, &self.moduli)
        };
        for i in 0..d {
            let ei = unit_vec(i);
            if self.mul(one, ei) != ei {
                return Err(Error::NotARing("the unit does not act as identity".into()));
            }
            for j in 0..d {
                let ej = unit_vec(j);
                for k in 0..d {
                    let ek = unit_vec(k);
                    if self.mul(self.mul(ei, ej), ek) != self.mul(ei, self.mul(ej, ek)) {
                        return Err(Error::NotARing("multiplication is not associative".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

impl FiniteRing {
    fn from_basis(name: String, repr: BasisRepr, one_coords: Vec<u64>, generators: Vec<(String, usize)>) -> Result<Self> {
        let card = repr.card();
        if card > MAX_CARDINALITY as u128 {
            return Err(Error::CardinalityBound(card, MAX_CARDINALITY as u128));
        }
        let one = encode(&one_coords, &repr.moduli);
        repr.verify(one)?;
        Ok(FiniteRing {
            name,
            card: card as usize,
            one,
            repr: Repr::Basis(repr),
            generators,
            tables: OnceLock::new(),
            nilradical: OnceLock::new(),
            characteristic: OnceLock::new(),
        })
    }

    fn from_tables(name: String, add: Vec<u16>, mul: Vec<u16>, one: usize, labels: Vec<String>) -> Self {
        let card = labels.len();
        FiniteRing {
            name,
            card,
            one,
            repr: Repr::Table(TableRepr { add, mul, labels }),
            generators: Vec::new(),
            tables: OnceLock::new(),
            nilradical: OnceLock::new(),
            characteristic: OnceLock::new(),
        }
    }

    /// `Z/m`.
    pub fn zmod(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::RingSpec(format!("Zmod({m}) is not a nonzero ring")));
        }
        let repr = BasisRepr {
            moduli: vec![m],
            structure: vec![vec![vec![1]]],
            labels: vec!["1".into()],
            blocks: vec![(0, 1)],
        };
        Self::from_basis(format!("Zmod({m})"), repr, vec![1], Vec::new())
    }

    /// `F_q` for `q = p^k`, generated by `a` over `F_p`.
    pub fn gf(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::RingSpec(format!("GF({p},{k}): {p} is not prime")));
        }
        if k == 0 {
            return Err(Error::RingSpec("GF degree must be positive".into()));
        }
        let card = (p as u128).saturating_pow(k);
        if card > MAX_CARDINALITY as u128 {
            return Err(Error::CardinalityBound(card, MAX_CARDINALITY as u128));
        }
        let name = if k == 1 { format!("GF({p})") } else { format!("GF({p},{k})") };
        if k == 1 {
            let mut r = Self::zmod(p)?;
            r.name = name;
            return Ok(r);
        }
        let modulus = irreducible_poly(p, k as usize);
        let d = k as usize;
        // a^n reduced modulo the monic irreducible, as coefficient vectors
        let mut powers: Vec<Vec<u64>> = Vec::new();
        let mut cur = vec![0u64; d];
        cur[0] = 1;
        for _ in 0..(2 * d - 1) {
            powers.push(cur.clone());
            // multiply by a
            let top = cur[d - 1];
            let mut next = vec![0u64; d];
            for i in (1..d).rev() {
                next[i] = cur[i - 1];
            }
            for (i, n) in next.iter_mut().enumerate() {
                *n = (*n + (p - top % p) * modulus[i] % p) % p;
            }
            cur = next;
        }
        let structure = (0..d).map(|i| (0..d).map(|j| powers[i + j].clone()).collect()).collect();
        let labels = (0..d)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            })
            .collect();
        let repr = BasisRepr { moduli: vec![p; d], structure, labels, blocks: vec![(0, d)] };
        let mut one = vec![0; d];
        one[0] = 1;
        let mut a = vec![0; d];
        a[1] = 1;
        let a_idx = encode(&a, &repr.moduli);
        Self::from_basis(name, repr, one, vec![("a".into(), a_idx)])
    }

    /// `F_p[vars]/(relations)`, which must be finite.
    pub fn quotient_of_polynomials(p: u64, vars: &[String], relations: &[QPoly]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::RingSpec(format!("Quot over GF({p}) needs a prime")));
        }
        let field = PrimeField::new(p);
        let n = vars.len();
        let rels: Vec<Poly<PrimeField>> = relations.iter().map(|r| r.to_field(&field)).collect::<Result<_>>()?;
        let gb = Groebner::grevlex(field, n, &rels);
        if gb.is_unit_ideal() {
            return Err(Error::NotARing("relations generate the unit ideal".into()));
        }
        if !gb.is_zero_dimensional() {
            return Err(Error::NotARing("quotient is infinite (relations are not zero-dimensional)".into()));
        }
        let bound: u32 = gb.leading_monomials().iter().map(|m| m.degree()).sum::<u32>() + 1;
        let basis = gb.standard_monomials(bound);
        let card = (p as u128).saturating_pow(basis.len() as u32);
        if card > MAX_CARDINALITY as u128 {
            return Err(Error::CardinalityBound(card, MAX_CARDINALITY as u128));
        }
        let d = basis.len();
        let index_of = |m: &Monomial| basis.iter().position(|b| b == m).expect("normal forms use standard monomials");
        let mut structure = vec![vec![vec![0u64; d]; d]; d];
        for i in 0..d {
            for j in 0..d {
                let prod = Poly::monomial(field, basis[i].mul(&basis[j]), 1);
                let nf = gb.reduce(&prod);
                for (m, c) in nf.terms() {
                    structure[i][j][index_of(m)] = *c;
                }
            }
        }
        let labels = basis
            .iter()
            .map(|m| {
                if m.is_one() {
                    "1".to_string()
                } else {
                    Poly::monomial(field, m.clone(), 1).display_with(vars)
                }
            })
            .collect();
        let repr = BasisRepr { moduli: vec![p; d], structure, labels, blocks: vec![(0, d)] };
        let one_nf = gb.reduce(&Poly::one(field, n));
        let mut one = vec![0u64; d];
        for (m, c) in one_nf.terms() {
            one[index_of(m)] = *c;
        }
        let mut generators = Vec::new();
        let mut coords = Vec::new();
        for (i, v) in vars.iter().enumerate() {
            let nf = gb.reduce(&Poly::var(field, n, i));
            let mut c = vec![0u64; d];
            for (m, x) in nf.terms() {
                c[index_of(m)] = *x;
            }
            coords.push(c.clone());
            generators.push((v.clone(), encode(&c, &repr.moduli)));
        }
        let rel_text: Vec<String> = relations.iter().map(|r| r.display_with(vars)).collect();
        let name = format!("Quot(GF({p}),[{}],[{}])", vars.join(","), rel_text.join(","));
        Self::from_basis(name, repr, one, generators)
    }

    /// Direct product.
    pub fn product(factors: &[FiniteRing]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::RingSpec("empty product".into()));
        }
        let card: u128 = factors.iter().map(|f| f.card as u128).product();
        if card > MAX_CARDINALITY as u128 {
            return Err(Error::CardinalityBound(card, MAX_CARDINALITY as u128));
        }
        let name = format!("Prod({})", factors.iter().map(|f| f.name.clone()).collect::<Vec<_>>().join(","));
        let all_basis = factors.iter().all(|f| matches!(f.repr, Repr::Basis(_)));
        if all_basis {
            let mut moduli = Vec::new();
            let mut labels = Vec::new();
            let mut blocks = Vec::new();
            let mut one = Vec::new();
            for f in factors {
                let Repr::Basis(b) = &f.repr else { unreachable!() };
                let start = moduli.len();
                moduli.extend(b.moduli.iter().copied());
                labels.extend(b.labels.iter().cloned());
                blocks.push((start, moduli.len()));
                one.extend(decode(f.one, &b.moduli));
            }
            let d = moduli.len();
            let mut structure = vec![vec![vec![0u64; d]; d]; d];
            for (f, &(s, _)) in factors.iter().zip(&blocks) {
                let Repr::Basis(b) = &f.repr else { unreachable!() };
                let k = b.moduli.len();
                for i in 0..k {
                    for j in 0..k {
                        for l in 0..k {
                            structure[s + i][s + j][s + l] = b.structure[i][j][l];
                        }
                    }
                }
            }
            let repr = BasisRepr { moduli, structure, labels, blocks };
            return Self::from_basis(name, repr, one, Vec::new());
        }
        // Generic product through operation tables.
        let card = card as usize;
        let radix: Vec<usize> = factors.iter().map(|f| f.card).collect();
        let split = |mut x: usize| -> Vec<usize> {
            radix
                .iter()
                .map(|r| {
                    let c = x % r;
                    x /= r;
                    c
                })
                .collect()
        };
        let join = |cs: &[usize]| -> usize { cs.iter().zip(&radix).rev().fold(0, |acc, (c, r)| acc * r + c) };
        let mut add = vec![0u16; card * card];
        let mut mul = vec![0u16; card * card];
        for a in 0..card {
            let xa = split(a);
            for b in 0..card {
                let xb = split(b);
                let s: Vec<usize> = factors.iter().enumerate().map(|(i, f)| f.add(xa[i], xb[i])).collect();
                let m: Vec<usize> = factors.iter().enumerate().map(|(i, f)| f.mul(xa[i], xb[i])).collect();
                add[a * card + b] = join(&s) as u16;
                mul[a * card + b] = join(&m) as u16;
            }
        }
        let one = join(&factors.iter().map(|f| f.one).collect::<Vec<_>>());
        let labels = (0..card)
            .map(|x| {
                let xs = split(x);
                format!("({})", factors.iter().zip(xs).map(|(f, c)| f.display(c)).collect::<Vec<_>>().join(", "))
            })
            .collect();
        Ok(Self::from_tables(name, add, mul, one, labels))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cardinality(&self) -> usize {
        self.card
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.card
    }

    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    /// Number of product factors in the additive basis (1 for non-products and
    /// table-backed rings).
    pub fn factor_count(&self) -> usize {
        match &self.repr {
            Repr::Basis(b) => b.blocks.len(),
            Repr::Table(_) => 1,
        }
    }

    fn tables(&self) -> Option<&Tables> {
        self.tables
            .get_or_init(|| {
                let Repr::Basis(b) = &self.repr else { return None };
                if self.card > TABLE_CACHE_LIMIT {
                    return None;
                }
                let n = self.card;
                let mut add = vec![0u16; n * n];
                let mut mul = vec![0u16; n * n];
                for a in 0..n {
                    for c in 0..n {
                        add[a * n + c] = b.add(a, c) as u16;
                        mul[a * n + c] = b.mul(a, c) as u16;
                    }
                }
                Some(Tables { add, mul })
            })
            .as_ref()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        match &self.repr {
            Repr::Table(t) => t.add[a * self.card + b] as usize,
            Repr::Basis(r) => match self.tables() {
                Some(t) => t.add[a * self.card + b] as usize,
                None => r.add(a, b),
            },
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.repr {
            Repr::Table(t) => t.mul[a * self.card + b] as usize,
            Repr::Basis(r) => match self.tables() {
                Some(t) => t.mul[a * self.card + b] as usize,
                None => r.mul(a, b),
            },
        }
    }

    pub fn neg(&self, a: usize) -> usize {
        match &self.repr {
            Repr::Basis(r) => {
                let x = decode(a, &r.moduli);
                let y: Vec<u64> = x.iter().zip(&r.moduli).map(|(c, m)| (m - c) % m).collect();
                encode(&y, &r.moduli)
            }
            Repr::Table(_) => (0..self.card).find(|&b| self.add(a, b) == 0).expect("additive inverse"),
        }
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: usize, mut e: u64) -> usize {
        let mut acc = self.one;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `n * 1`.
    pub fn from_int(&self, n: i64) -> usize {
        let mut acc = 0;
        let mut base = if n >= 0 { self.one } else { self.neg(self.one) };
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    /// Additive order of the unit.
    pub fn characteristic(&self) -> u64 {
        *self.characteristic.get_or_init(|| {
            let mut x = self.one;
            let mut n = 1u64;
            while x != 0 {
                x = self.add(x, self.one);
                n += 1;
            }
            n
        })
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.card).find(|&b| self.mul(a, b) == self.one)
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.inverse(a).is_some()
    }

    pub fn display(&self, a: usize) -> String {
        match &self.repr {
            Repr::Basis(r) => r.label(a),
            Repr::Table(t) => t.labels[a].clone(),
        }
    }

    /// Element with the given product-factor components (basis rings only).
    pub fn from_components(&self, parts: &[usize], factors: &[&FiniteRing]) -> Result<usize> {
        let Repr::Basis(r) = &self.repr else {
            return Err(Error::Invalid("component syntax needs a basis ring".into()));
        };
        if parts.len() != r.blocks.len() || factors.len() != parts.len() {
            return Err(Error::Invalid(format!("expected {} components", r.blocks.len())));
        }
        let mut coords = Vec::new();
        for (f, &x) in factors.iter().zip(parts) {
            let Repr::Basis(fb) = &f.repr else {
                return Err(Error::Invalid("component ring has no basis".into()));
            };
            coords.extend(decode(x, &fb.moduli));
        }
        Ok(encode(&coords, &r.moduli))
    }

    /// Exhaustive check of the ring axioms on all pairs and triples.
    pub fn verify_axioms_exhaustive(&self) -> Result<()> {
        let n = self.card;
        let ok = crate::par::all_range(crate::par::Exec::Parallel, n, |a| {
            if self.mul(self.one, a) != a || self.add(0, a) != a {
                return false;
            }
            for b in 0..n {
                if self.mul(a, b) != self.mul(b, a) || self.add(a, b) != self.add(b, a) {
                    return false;
                }
                let ab = self.mul(a, b);
                let apb = self.add(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return false;
                    }
                    if self.mul(apb, c) != self.add(self.mul(a, c), self.mul(b, c)) {
                        return false;
                    }
                    if self.add(apb, c) != self.add(a, self.add(b, c)) {
                        return false;
                    }
                }
            }
            true
        });
        if ok {
            Ok(())
        } else {
            Err(Error::NotARing(format!("{} fails an axiom", self.name)))
        }
    }

    /// Set of nilpotent elements, the largest nilpotent ideal.
    pub fn nilradical(&self) -> &Ideal {
        self.nilradical.get_or_init(|| {
            // x nilpotent iff x^e = 0 with e = ceil(log2 card) + 1
            let e = usize::BITS - self.card.leading_zeros() + 1;
            let member: Vec<bool> = (0..self.card).map(|x| self.pow(x, e as u64) == 0).collect();
            Ideal::from_members(&member)
        })
    }

    pub fn is_reduced(&self) -> bool {
        self.nilradical().is_zero()
    }

    /// The ideal generated by `gens`.
    pub fn ideal_generated(&self, gens: &[usize]) -> Ideal {
        let mut member = vec![false; self.card];
        member[0] = true;
        let mut elems = vec![0usize];
        for &g in gens {
            if member[g] {
                continue;
            }
            // J + (g) = { j + r g }
            let multiples: HashSet<usize> = (0..self.card).map(|r| self.mul(r, g)).collect();
            let mut next = Vec::new();
            for &j in &elems {
                for &m in &multiples {
                    let s = self.add(j, m);
                    if !member[s] {
                        member[s] = true;
                        next.push(s);
                    }
                }
            }
            elems.extend(next);
        }
        Ideal::from_members(&member)
    }

    /// The product ideal `I * J` (additive span of products).
    pub fn ideal_product(&self, a: &Ideal, b: &Ideal) -> Ideal {
        let mut gens: Vec<usize> = Vec::new();
        let mut seen = HashSet::new();
        for &x in a.elements() {
            for &y in b.elements() {
                let p = self.mul(x, y);
                if seen.insert(p) {
                    gens.push(p);
                }
            }
        }
        // products already form an R-stable set; close additively
        let mut member = vec![false; self.card];
        member[0] = true;
        let mut stack = vec![0usize];
        let mut all = vec![0usize];
        while let Some(x) = stack.pop() {
            for &g in &gens {
                let s = self.add(x, g);
                if !member[s] {
                    member[s] = true;
                    stack.push(s);
                    all.push(s);
                }
            }
        }
        Ideal::from_members(&member)
    }

    /// Smallest `e >= 1` with `I^e = 0`, if `I` is nilpotent.
    pub fn nilpotency_exponent(&self, ideal: &Ideal) -> Option<u32> {
        let mut power = ideal.clone();
        for e in 1..=(self.card as u32 + 1) {
            if power.is_zero() {
                return Some(e);
            }
            let next = self.ideal_product(&power, ideal);
            if next == power {
                return None;
            }
            power = next;
        }
        None
    }

    /// All ideals contained in the nilradical, with their nilpotency
    /// exponents, ordered by size.
    pub fn nilpotent_ideals(&self) -> Vec<(Ideal, u32)> {
        let nil = self.nilradical().clone();
        let mut found: Vec<Ideal> = vec![Ideal::zero()];
        let mut seen: HashSet<Ideal> = found.iter().cloned().collect();
        let mut frontier = found.clone();
        while let Some(j) = frontier.pop() {
            for &x in nil.elements() {
                if j.contains(x) {
                    continue;
                }
                let mut gens = j.elements().to_vec();
                gens.push(x);
                let k = self.ideal_generated(&gens);
                if seen.insert(k.clone()) {
                    found.push(k.clone());
                    frontier.push(k);
                }
            }
        }
        found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.elements.cmp(&b.elements)));
        found
            .into_iter()
            .map(|i| {
                let e = self.nilpotency_exponent(&i).expect("ideals inside the nilradical are nilpotent");
                (i, e)
            })
            .collect()
    }

    /// `R / I` with the projection map.
    pub fn quotient(&self, ideal: &Ideal) -> (FiniteRing, Vec<usize>) {
        let mut class = vec![usize::MAX; self.card];
        let mut reps = Vec::new();
        for x in 0..self.card {
            if class[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for &i in ideal.elements() {
                class[self.add(x, i)] = id;
            }
        }
        let n = reps.len();
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        for (a, &ra) in reps.iter().enumerate() {
            for (b, &rb) in reps.iter().enumerate() {
                add[a * n + b] = class[self.add(ra, rb)] as u16;
                mul[a * n + b] = class[self.mul(ra, rb)] as u16;
            }
        }
        let labels = reps.iter().map(|&r| self.display(r)).collect();
        let name = if ideal.is_zero() { self.name.clone() } else { format!("{}/({} elements)", self.name, ideal.len()) };
        let mut q = Self::from_tables(name, add, mul, class[self.one], labels);
        q.generators = self.generators.iter().map(|(s, g)| (s.clone(), class[*g])).collect();
        (q, class)
    }

    /// `R / Nil(R)` with the projection.
    pub fn reduction(&self) -> (FiniteRing, Vec<usize>) {
        let nil = self.nilradical().clone();
        let (mut q, proj) = self.quotient(&nil);
        if !nil.is_zero() {
            q.name = format!("({})_red", self.name);
        }
        (q, proj)
    }

    /// The subring on a set of elements closed under the operations, with
    /// its embedding.
    pub fn subring(&self, elements: &[usize], name: String) -> Result<(FiniteRing, Vec<usize>)> {
        let mut elems = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let pos = |x: usize| elems.binary_search(&x).ok();
        let n = elems.len();
        if pos(0) != Some(0) || pos(self.one).is_none() {
            return Err(Error::NotARing("subring must contain 0 and 1".into()));
        }
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        for (a, &x) in elems.iter().enumerate() {
            for (b, &y) in elems.iter().enumerate() {
                add[a * n + b] = pos(self.add(x, y)).ok_or_else(|| Error::NotARing("not closed under +".into()))? as u16;
                mul[a * n + b] = pos(self.mul(x, y)).ok_or_else(|| Error::NotARing("not closed under *".into()))? as u16;
            }
        }
        let labels = elems.iter().map(|&x| self.display(x)).collect();
        let one = pos(self.one).unwrap();
        Ok((Self::from_tables(name, add, mul, one, labels), elems))
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// Monic irreducible polynomial of degree `k` over `F_p`, as low-order
/// coefficients `c_0..c_{k-1}` of `x^k + sum c_i x^i`.
fn irreducible_poly(p: u64, k: usize) -> Vec<u64> {
    let field = PrimeField::new(p);
    let total = (p as usize).pow(k as u32);
    for code in 0..total {
        let mut coeffs = Vec::with_capacity(k);
        let mut c = code;
        for _ in 0..k {
            coeffs.push((c % p as usize) as u64);
            c /= p as usize;
        }
        if coeffs[0] == 0 {
            continue;
        }
        let mut terms: Vec<(Monomial, u64)> = coeffs.iter().enumerate().map(|(i, &c)| (Monomial(vec![i as u32]), c)).collect();
        terms.push((Monomial(vec![k as u32]), 1));
        let f = Poly::from_terms(field, 1, terms);
        if is_irreducible(&field, &f, p, k) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn is_irreducible(field: &PrimeField, f: &Poly<PrimeField>, p: u64, k: usize) -> bool {
    // No monic factor of degree 1..=k/2.
    for d in 1..=(k / 2) {
        let total = (p as usize).pow(d as u32);
        for code in 0..total {
            let mut terms = Vec::new();
            let mut c = code;
            for i in 0..d {
                terms.push((Monomial(vec![i as u32]), (c % p as usize) as u64));
                c /= p as usize;
            }
            terms.push((Monomial(vec![d as u32]), 1));
            let g = Poly::from_terms(*field, 1, terms);
            let gb = Groebner::new(*field, 1, &[g], MonomialOrder::grevlex());
            if gb.contains(f) {
                return false;
            }
        }
    }
    let _ = field.characteristic();
    true
}
