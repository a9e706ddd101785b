//! Morphisms of presentations, composition and base change.

use std::collections::BTreeSet;

use super::presentation::Presentation;
use crate::error::{Error, Result};
use crate::poly::QPoly;

/// A ring map `A -> B` given by the images of `A`'s variables in `B`.
#[derive(Debug, Clone, PartialEq)]
pub struct Morphism {
    source: Presentation,
    target: Presentation,
    images: Vec<QPoly>,
}

/// Picks a name not in `taken`, appending digits when needed.
fn fresh(name: &str, taken: &mut BTreeSet<String>) -> String {
    if taken.insert(name.to_string()) {
        return name.to_string();
    }
    (1..)
        .map(|i| format!("{name}{i}"))
        .find(|c| taken.insert(c.clone()))
        .expect("unbounded suffixes")
}

impl Morphism {
    /// Checks that the images satisfy the source relations in the target.
    pub fn new(source: Presentation, target: Presentation, images: Vec<QPoly>) -> Result<Self> {
        if source.coefficients() != target.coefficients() {
            return Err(Error::Incompatible(format!(
                "coefficients {} and {} differ",
                source.coefficients(),
                target.coefficients()
            )));
        }
        if images.len() != source.nvars() {
            return Err(Error::Incompatible(format!("{} images for {} variables", images.len(), source.nvars())));
        }
        if let Some(bad) = images.iter().find(|f| f.nvars() != target.nvars()) {
            return Err(Error::Incompatible(format!("image with {} variables in a target with {}", bad.nvars(), target.nvars())));
        }
        for r in source.all_relations() {
            let pushed = r.substitute(&images, target.nvars());
            if !target.contains(&pushed) {
                return Err(Error::Incompatible(format!(
                    "relation {} does not hold in the target",
                    source.display(&r)
                )));
            }
        }
        Ok(Morphism { source, target, images })
    }

    pub fn identity(p: &Presentation) -> Self {
        let a = p.absolute();
        let n = a.nvars();
        let images = (0..n).map(|i| QPoly::q_var(n, i)).collect();
        Morphism { source: a.clone(), target: a, images }
    }

    /// The structure map from the base algebra.
    pub fn structural(p: &Presentation) -> Self {
        let n = p.nvars();
        let images = (0..p.base_vars()).map(|i| QPoly::q_var(n, i)).collect();
        Morphism { source: p.base_ring(), target: p.clone(), images }
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    pub fn images(&self) -> &[QPoly] {
        &self.images
    }

    fn is_inclusion(&self) -> bool {
        let n = self.target.nvars();
        self.images.iter().enumerate().all(|(i, f)| *f == QPoly::q_var(n, i))
    }

    /// The target as a presentation over the source, together with the
    /// positions of the target's variables in it.
    pub fn relative(&self) -> (Presentation, Vec<usize>) {
        let k = self.source.nvars();
        let src_rels = self.source.all_relations();
        if self.is_inclusion() {
            let n = self.target.nvars();
            let src_abs = self.source.absolute();
            let rels: Vec<QPoly> = self
                .target
                .all_relations()
                .into_iter()
                .filter(|r| match r.truncate_vars(k) {
                    Some(base) => !src_abs.contains(&base),
                    None => true,
                })
                .collect();
            let pres = Presentation::from_parts(
                self.target.coefficients(),
                self.target.vars().to_vec(),
                k,
                src_rels.iter().map(|r| r.extend(n)).collect(),
                rels,
            )
            .expect("parts come from valid presentations")
            .with_degree_cap(self.target.degree_cap());
            return (pres, (0..n).collect());
        }
        // Graph presentation A[b]/(I_B, a - phi(b)).
        let m = self.target.nvars();
        let n = k + m;
        let mut taken: BTreeSet<String> = self.source.vars().iter().cloned().collect();
        let mut vars = self.source.vars().to_vec();
        for v in self.target.vars() {
            vars.push(fresh(v, &mut taken));
        }
        let shift: Vec<usize> = (k..n).collect();
        let mut rels: Vec<QPoly> = self.target.all_relations().iter().map(|r| r.remap(n, &shift)).collect();
        for (i, phi) in self.images.iter().enumerate() {
            rels.push(&QPoly::q_var(n, i) - &phi.remap(n, &shift));
        }
        let pres = Presentation::from_parts(
            self.target.coefficients(),
            vars,
            k,
            src_rels.iter().map(|r| r.extend(n)).collect(),
            rels,
        )
        .expect("parts come from valid presentations")
        .with_degree_cap(self.target.degree_cap());
        (pres, shift)
    }

    /// `g . self`, presented by adjoining the intermediate variables and
    /// relations.
    pub fn compose(&self, g: &Morphism) -> Result<Morphism> {
        if !self.target.same_ring(&g.source) {
            return Err(Error::Incompatible("target of the first map is not the source of the second".into()));
        }
        let (pf, pos_f) = self.relative();
        let (pg, _) = g.relative();
        let b = g.source.nvars();
        let nf = pf.nvars();
        let mut taken: BTreeSet<String> = pf.vars().iter().cloned().collect();
        let mut vars = pf.vars().to_vec();
        for v in &pg.vars()[b..] {
            vars.push(fresh(v, &mut taken));
        }
        let n = vars.len();
        let map: Vec<usize> = (0..pg.nvars()).map(|j| if j < b { pos_f[j] } else { nf + j - b }).collect();
        let mut rels: Vec<QPoly> = pf.relations().iter().map(|r| r.extend(n)).collect();
        rels.extend(pg.relations().iter().map(|r| r.remap(n, &map)));
        let composite = Presentation::from_parts(
            pf.coefficients(),
            vars,
            pf.base_vars(),
            pf.base_relations().iter().map(|r| r.extend(n)).collect(),
            rels,
        )?
        .with_degree_cap(g.target.degree_cap());
        let images = (0..pf.base_vars()).map(|i| QPoly::q_var(n, i)).collect();
        Ok(Morphism { source: self.source.clone(), target: composite, images })
    }
}

/// Base change of `pres` (over `A`) along `phi: A -> A'`.
pub fn base_change(pres: &Presentation, phi: &Morphism) -> Result<Presentation> {
    if !pres.base_ring().same_ring(phi.source()) {
        return Err(Error::Incompatible("base of the presentation is not the source of the map".into()));
    }
    let target = phi.target();
    let k = target.nvars();
    let mut taken: BTreeSet<String> = target.vars().iter().cloned().collect();
    let mut vars = target.vars().to_vec();
    for v in &pres.vars()[pres.base_vars()..] {
        vars.push(fresh(v, &mut taken));
    }
    let n = vars.len();
    let mut images: Vec<QPoly> = phi.images().iter().map(|f| f.extend(n)).collect();
    images.extend((0..pres.new_vars()).map(|j| QPoly::q_var(n, k + j)));
    let rels: Vec<QPoly> = pres.relations().iter().map(|r| r.substitute(&images, n)).collect();
    Ok(Presentation::from_parts(
        target.coefficients(),
        vars,
        k,
        target.all_relations().iter().map(|r| r.extend(n)).collect(),
        rels,
    )?
    .with_degree_cap(pres.degree_cap()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::{names, parse_poly};
    use crate::tate::Coefficients;

    fn qp() -> Coefficients {
        Coefficients::Qp { p: 2, prec: 8 }
    }

    #[test]
    fn identity_composes_to_identity() {
        let a = Presentation::free(qp(), names(&["T"])).unwrap();
        let id = Morphism::identity(&a);
        let c = id.compose(&id).unwrap();
        let (rel, _) = c.relative();
        assert_eq!(rel.new_vars(), 0);
        assert!(rel.relations().is_empty());
    }

    #[test]
    fn base_change_substitutes() {
        let a = Presentation::free(qp(), names(&["T"])).unwrap();
        let b = Presentation::quotient(&a, names(&["u"]), vec![parse_poly("u - T^2", &names(&["T", "u"])).unwrap()]).unwrap();
        let a2 = Presentation::free(qp(), names(&["S"])).unwrap();
        let phi = Morphism::new(a.clone(), a2, vec![parse_poly("S + 1", &names(&["S"])).unwrap()]).unwrap();
        let bc = base_change(&b, &phi).unwrap();
        assert_eq!(bc.vars(), &names(&["S", "u"])[..]);
        assert_eq!(bc.display(&bc.relations()[0]), "-S^2 - 2*S + u - 1");
    }

    #[test]
    fn ill_defined_map_rejected() {
        let v = names(&["T"]);
        let a = Presentation::free(qp(), vec![]).unwrap();
        let b = Presentation::quotient(&a, v.clone(), vec![parse_poly("T^2 - T", &v).unwrap()]).unwrap();
        let c = Presentation::quotient(&a, v.clone(), vec![parse_poly("T^2", &v).unwrap()]).unwrap();
        assert!(Morphism::new(b.clone(), c.clone(), vec![parse_poly("T", &v).unwrap()]).is_err());
        assert!(Morphism::new(b, c, vec![parse_poly("0", &v).unwrap()]).is_ok());
    }
}
