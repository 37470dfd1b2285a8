//! JSON encoding of finite categories and profunctors.
//!
//! A category lists its objects, its non-identity morphisms with source and
//! target object names, and the composite of every composable pair of
//! non-identity morphisms as `[g, f, g∘f]` by morphism name. Identities are
//! implicit and named `id_<object>`.
//!
//! A profunctor `C ⇸ D` gives `sizes[d][c]` and the action tables of every
//! non-identity morphism: `contra` entries for morphisms of D (one table per
//! object of C), `co` entries for morphisms of C (one per object of D).

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::category::{Cat, FiniteCategory, Morphism};
use super::profunctor::{compose_prof, prof_iso, FiniteProfunctor};
use super::ProfError;
use crate::report::{Failure, Report, SCHEMA_VERSION};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryJson {
    pub name: String,
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismJson>,
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionJson {
    pub morphism: String,
    pub at: String,
    pub table: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfunctorJson {
    pub name: String,
    pub source: String,
    pub target: String,
    pub sizes: Vec<Vec<usize>>,
    #[serde(default)]
    pub contra: Vec<ActionJson>,
    #[serde(default)]
    pub co: Vec<ActionJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CoendFile {
    pub schema_version: u32,
    pub categories: Vec<CategoryJson>,
    #[serde(default)]
    pub profunctors: Vec<ProfunctorJson>,
}

fn bad(msg: String) -> ProfError {
    ProfError::Category(msg)
}

pub fn category_from_json(json: &CategoryJson) -> Result<FiniteCategory, ProfError> {
    let obj: HashMap<&str, usize> = json.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
    let lookup = |name: &str| obj.get(name).copied().ok_or_else(|| bad(format!("unknown object {name}")));
    let mut morphisms: Vec<Morphism> = json
        .objects
        .iter()
        .enumerate()
        .map(|(i, o)| Morphism { name: format!("id_{o}"), source: i, target: i })
        .collect();
    for m in &json.morphisms {
        morphisms.push(Morphism { name: m.name.clone(), source: lookup(&m.source)?, target: lookup(&m.target)? });
    }
    let by_name: HashMap<&str, usize> = morphisms.iter().enumerate().map(|(i, m)| (m.name.as_str(), i)).collect();
    if by_name.len() != morphisms.len() {
        return Err(bad("duplicate morphism names".into()));
    }
    let n = json.objects.len();
    let count = morphisms.len();
    let mut table = vec![vec![None; count]; count];
    for g in 0..count {
        for f in 0..count {
            if morphisms[f].target != morphisms[g].source {
                continue;
            }
            if g < n {
                table[g][f] = Some(f);
            } else if f < n {
                table[g][f] = Some(g);
            }
        }
    }
    for [g, f, h] in &json.compose {
        let id = |s: &str| by_name.get(s).copied().ok_or_else(|| bad(format!("unknown morphism {s}")));
        let (g, f, h) = (id(g)?, id(f)?, id(h)?);
        if table[g][f].is_some_and(|x| x != h) {
            return Err(bad(format!("conflicting composites for {} ∘ {}", morphisms[g].name, morphisms[f].name)));
        }
        table[g][f] = Some(h);
    }
    FiniteCategory::new(json.objects.clone(), morphisms, (0..n).collect(), table)
}

pub fn category_to_json(name: &str, c: &FiniteCategory) -> CategoryJson {
    let obj = |i: usize| c.objects()[i].clone();
    let non_id: Vec<usize> = (0..c.morphism_count()).filter(|&f| !c.is_identity(f)).collect();
    let morphisms = non_id
        .iter()
        .map(|&f| MorphismJson { name: c.morphism(f).name.clone(), source: obj(c.source(f)), target: obj(c.target(f)) })
        .collect();
    let mut compose = Vec::new();
    for &g in &non_id {
        for &f in &non_id {
            if let Some(h) = c.compose(g, f) {
                let name = |m: usize| {
                    if c.is_identity(m) { format!("id_{}", obj(c.source(m))) } else { c.morphism(m).name.clone() }
                };
                compose.push([name(g), name(f), name(h)]);
            }
        }
    }
    CategoryJson { name: name.to_string(), objects: c.objects().to_vec(), morphisms, compose }
}

pub fn profunctor_from_json(json: &ProfunctorJson, cats: &HashMap<String, Cat>) -> Result<FiniteProfunctor, ProfError> {
    let get = |n: &str| cats.get(n).cloned().ok_or_else(|| ProfError::Mismatch(format!("unknown category {n}")));
    let (c, d) = (get(&json.source)?, get(&json.target)?);
    let mut contra: HashMap<(usize, usize), &Vec<usize>> = HashMap::new();
    for a in &json.contra {
        let h = find_morphism(&d, &a.morphism)?;
        let at = c.find_object(&a.at).ok_or_else(|| bad(format!("unknown object {}", a.at)))?;
        contra.insert((h, at), &a.table);
    }
    let mut co: HashMap<(usize, usize), &Vec<usize>> = HashMap::new();
    for a in &json.co {
        let f = find_morphism(&c, &a.morphism)?;
        let at = d.find_object(&a.at).ok_or_else(|| bad(format!("unknown object {}", a.at)))?;
        co.insert((f, at), &a.table);
    }
    for h in (0..d.morphism_count()).filter(|&h| !d.is_identity(h)) {
        for ci in 0..c.object_count() {
            let table = contra
                .get(&(h, ci))
                .ok_or_else(|| ProfError::Profunctor(format!("missing action of {} at {}", d.morphism(h).name, c.objects()[ci])))?;
            if json.sizes.get(d.target(h)).and_then(|r| r.get(ci)) != Some(&table.len()) {
                return Err(ProfError::Profunctor(format!("table of {} has the wrong length", d.morphism(h).name)));
            }
        }
    }
    for f in (0..c.morphism_count()).filter(|&f| !c.is_identity(f)) {
        for di in 0..d.object_count() {
            let table = co
                .get(&(f, di))
                .ok_or_else(|| ProfError::Profunctor(format!("missing action of {} at {}", c.morphism(f).name, d.objects()[di])))?;
            if json.sizes.get(di).and_then(|r| r.get(c.source(f))) != Some(&table.len()) {
                return Err(ProfError::Profunctor(format!("table of {} has the wrong length", c.morphism(f).name)));
            }
        }
    }
    let (dd, cc) = (d.clone(), c.clone());
    FiniteProfunctor::new(
        c,
        d,
        json.sizes.clone(),
        |h, ci, x| if dd.is_identity(h) { x } else { contra[&(h, ci)][x] },
        |f, di, x| if cc.is_identity(f) { x } else { co[&(f, di)][x] },
    )
}

fn find_morphism(c: &FiniteCategory, name: &str) -> Result<usize, ProfError> {
    if let Some(o) = name.strip_prefix("id_").and_then(|o| c.find_object(o)) {
        return Ok(c.identity(o));
    }
    c.find_morphism(name).ok_or_else(|| bad(format!("unknown morphism {name}")))
}

pub fn profunctor_to_json(name: &str, p: &FiniteProfunctor, source: &str, target: &str) -> ProfunctorJson {
    let (c, d) = (&p.source, &p.target);
    let mut contra = Vec::new();
    for h in (0..d.morphism_count()).filter(|&h| !d.is_identity(h)) {
        for ci in 0..c.object_count() {
            let table = (0..p.size(d.target(h), ci)).map(|x| p.act_contra(h, ci, x)).collect();
            contra.push(ActionJson { morphism: d.morphism(h).name.clone(), at: c.objects()[ci].clone(), table });
        }
    }
    let mut co = Vec::new();
    for f in (0..c.morphism_count()).filter(|&f| !c.is_identity(f)) {
        for di in 0..d.object_count() {
            let table = (0..p.size(di, c.source(f))).map(|x| p.act_co(f, di, x)).collect();
            co.push(ActionJson { morphism: c.morphism(f).name.clone(), at: d.objects()[di].clone(), table });
        }
    }
    ProfunctorJson {
        name: name.to_string(),
        source: source.to_string(),
        target: target.to_string(),
        sizes: p.sizes().to_vec(),
        contra,
        co,
    }
}

/// Loads a file and checks, for its profunctors, functoriality, the unit
/// laws of composition and associativity of every composable triple (in
/// file order), each up to natural isomorphism.
pub fn check_coend_file(file: &CoendFile) -> Result<Report, ProfError> {
    if file.schema_version != SCHEMA_VERSION {
        return Err(ProfError::Mismatch(format!("unsupported schema version {}", file.schema_version)));
    }
    let mut report = Report::new("coend composition of file profunctors");
    for c in ["category-laws", "profunctor-laws", "unit-left", "unit-right", "associativity"] {
        report.declare(c);
    }
    let mut cats: HashMap<String, Cat> = HashMap::new();
    for cj in &file.categories {
        let c = category_from_json(cj)?;
        report.pass("category-laws");
        cats.insert(cj.name.clone(), Arc::new(c));
    }
    let mut profs = Vec::new();
    for pj in &file.profunctors {
        profs.push((pj, profunctor_from_json(pj, &cats)?));
        report.pass("profunctor-laws");
    }
    let iso = |p: &FiniteProfunctor, q: &FiniteProfunctor| -> Result<bool, ProfError> { Ok(prof_iso(p, q)?.is_some()) };
    for (pj, p) in &profs {
        let left = compose_prof(&FiniteProfunctor::hom(&p.target), p)?;
        let right = compose_prof(p, &FiniteProfunctor::hom(&p.source))?;
        let record = |report: &mut Report, check: &str, ok: bool| {
            report.record(check, if ok { Ok(()) } else { Err(Failure::new(check, &pj.name, "no isomorphism", "isomorphic")) });
        };
        record(&mut report, "unit-left", iso(&left, p)?);
        record(&mut report, "unit-right", iso(&right, p)?);
    }
    for (a, pa) in &profs {
        for (b, pb) in &profs {
            if pa.target != pb.source {
                continue;
            }
            for (c, pc) in &profs {
                if pb.target != pc.source {
                    continue;
                }
                let one = compose_prof(pc, &compose_prof(pb, pa)?)?;
                let two = compose_prof(&compose_prof(pc, pb)?, pa)?;
                let input = format!("{} ; {} ; {}", a.name, b.name, c.name);
                report.record(
                    "associativity",
                    if iso(&one, &two)? { Ok(()) } else { Err(Failure::new("associativity", input, "no isomorphism", "isomorphic")) },
                );
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn category_round_trip() {
        for c in [FiniteCategory::chain(3), FiniteCategory::iso_pair(), FiniteCategory::cyclic_group(3)] {
            let j = category_to_json("c", &c);
            let back = category_from_json(&j).unwrap();
            assert_eq!(back.morphism_count(), c.morphism_count());
            assert_eq!(category_to_json("c", &back), j);
        }
    }

    #[test]
    fn profunctor_round_trip() {
        let c: Cat = Arc::new(FiniteCategory::chain(2));
        let hom = FiniteProfunctor::hom(&c);
        let j = profunctor_to_json("hom", &hom, "c", "c");
        let cats = HashMap::from([("c".to_string(), c.clone())]);
        let back = profunctor_from_json(&j, &cats).unwrap();
        assert!(prof_iso(&back, &hom).unwrap().is_some());
    }
}
