//! Loading references and running the verify, deform, double, dual and export pipelines.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use mha_core::algebras::Grading;
use mha_core::cograded::{check_admissible, check_cograded, deform, Action};
use mha_core::double::{
    build_double, check_double_axioms, check_pairing, double_crossing, induced_grading_check,
    reduced_dual, DoubleStructure, Pairing,
};
use mha_core::exact::Matrix;
use mha_core::groups::{Elem, Group, Window};
use mha_core::hopf::{
    check_hopf, solve_left_integral, solve_right_integral, MhaStructure, Tabulated,
};
use mha_core::report::CertificateReport;

use crate::builtins::builtin;
use crate::report::sha256_hex;
use crate::spec::{
    action_spec, form_specs, read_action, read_forms, read_table, read_window, write_table,
    ActionSpec, PairingSpec, SpecFile,
};

/// A structure resolved from a reference, with its optional sections.
#[derive(Clone)]
pub struct Loaded {
    pub reference: String,
    pub structure: MhaStructure,
    /// Canonical rendering; `None` for structures over infinite groups.
    pub spec: Option<SpecFile>,
    pub action: Option<Action>,
    pub pairing: Option<Pairing>,
    pub window: Option<Window>,
    pub digest: String,
}

impl Loaded {
    fn from_spec(spec: SpecFile, reference: &str, base: &Path) -> Result<Self> {
        let table = Arc::new(read_table(&spec)?);
        let g = table.group.clone();
        let action = spec
            .action
            .as_ref()
            .map(|a| read_action(&g, &table.dims, a))
            .transpose()
            .context("action")?;
        let window = spec
            .window
            .as_ref()
            .map(|w| read_window(&g, w))
            .transpose()
            .context("window")?;
        let pairing = match &spec.pairing {
            Some(ps) => {
                let partner = load_from(&ps.partner, base)
                    .with_context(|| format!("pairing.partner {:?}", ps.partner))?;
                let forms = read_forms(&g, &ps.forms)?;
                Some(pair_with(table.clone(), partner.structure, forms).context("pairing")?)
            }
            None => None,
        };
        let digest = sha256_hex(spec.to_json().as_bytes());
        Ok(Self {
            reference: reference.to_string(),
            structure: table,
            spec: Some(spec),
            action,
            pairing,
            window,
            digest,
        })
    }

    /// The double exactly as constructed, with its crossing when it has one.
    pub fn from_double(d: &DoubleStructure) -> Result<Self> {
        let spec = double_spec(d)?;
        let action = if d.is_crossing() {
            Some(double_crossing(d)?)
        } else {
            None
        };
        Ok(Self {
            reference: "double".into(),
            structure: d.structure(),
            digest: sha256_hex(spec.to_json().as_bytes()),
            spec: Some(spec),
            action,
            pairing: None,
            window: None,
        })
    }

    pub fn group(&self) -> &Group {
        self.structure.group()
    }
}

fn pair_with(
    me: Arc<Tabulated>,
    partner: MhaStructure,
    forms: BTreeMap<Elem, Matrix>,
) -> Result<Pairing> {
    Ok(match me.grading {
        Grading::GradedHopfSide => Pairing::new(me, partner, forms)?,
        Grading::Cograded => Pairing::new(partner, me, forms)?,
    })
}

/// `builtin:<name>` or a path to a spec file.
pub fn load(reference: &str) -> Result<Loaded> {
    load_from(reference, Path::new("."))
}

fn load_from(reference: &str, base: &Path) -> Result<Loaded> {
    if let Some(name) = reference.strip_prefix("builtin:") {
        return load_builtin(name);
    }
    let path = base.join(reference);
    let text =
        std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    let spec = SpecFile::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    let dir = path
        .parent()
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."));
    Loaded::from_spec(spec, reference, &dir).with_context(|| format!("loading {}", path.display()))
}

fn load_builtin(name: &str) -> Result<Loaded> {
    let b = builtin(name)?;
    let reference = format!("builtin:{name}");
    if !b.structure.group().is_finite() {
        return Ok(Loaded {
            digest: sha256_hex(reference.as_bytes()),
            reference,
            structure: b.structure,
            spec: None,
            action: None,
            pairing: None,
            window: None,
        });
    }
    let mut spec = write_table(&Tabulated::materialize(b.structure.as_ref())?)?;
    if let Some(partner) = b.partner {
        let g = b.structure.group();
        let forms: BTreeMap<Elem, Matrix> = g
            .elements()
            .expect("finite")
            .into_iter()
            .map(|p| (p, Matrix::identity(1)))
            .collect();
        spec.pairing = Some(PairingSpec {
            partner: partner.into(),
            forms: form_specs(&forms, g),
        });
    }
    Loaded::from_spec(spec, &reference, Path::new("."))
}

/// `lo..hi` for the integers, otherwise a comma-separated list of element names.
pub fn parse_window(g: &Group, text: &str) -> Result<Window> {
    if let Some((lo, hi)) = text.split_once("..") {
        let (lo, hi) = (lo.trim().parse::<Elem>()?, hi.trim().parse::<Elem>()?);
        return Ok(Window::range(g, lo, hi)?);
    }
    let names: Vec<String> = text.split(',').map(|s| s.trim().to_string()).collect();
    read_window(g, &names)
}

fn window_for(l: &Loaded, over: Option<&str>) -> Result<Window> {
    let g = l.group();
    match (over, &l.window) {
        (Some(text), _) => parse_window(g, text).context("--window"),
        (None, Some(w)) => Ok(w.clone()),
        (None, None) => {
            Window::full(g).map_err(|_| anyhow!("{} is infinite: pass --window", g.label()))
        }
    }
}

/// Full axiom suite, integral solvers, and the optional sections of the loaded file.
pub fn verify(l: &Loaded, window: Option<&str>) -> Result<CertificateReport> {
    let w = window_for(l, window)?;
    let g = l.group();
    let h = l.structure.as_ref();
    let mut r = CertificateReport::new(w.describe(g));
    r.spec_digest = Some(l.digest.clone());
    r.absorb("", check_hopf(h, &w));
    let cograded = h.grading() == Grading::Cograded;
    if cograded {
        r.absorb("", check_cograded(h, &w));
    }
    r.note(format!(
        "left integrals: dimension {}",
        solve_left_integral(h, &w).dimension
    ));
    r.note(format!(
        "right integrals: dimension {}",
        solve_right_integral(h, &w).dimension
    ));
    if let Some(a) = &l.action {
        if !cograded {
            bail!("actions are only supported on cograded structures");
        }
        let cert = check_admissible(h, a, &w);
        let admissible = cert.passed();
        r.absorb("action", cert.report);
        if admissible {
            if a.rho.adjoint_mismatch(g, &w).is_none() {
                r.note(format!("{} is a crossing", a.name));
            }
            let d = deform(l.structure.clone(), a, &w)?;
            r.absorb("deformed", check_hopf(d.as_ref(), &w));
            r.absorb("deformed", check_cograded(d.as_ref(), &w));
        }
    }
    if let Some(p) = &l.pairing {
        r.absorb("pairing", check_pairing(p, p.window()));
        r.absorb("pairing", induced_grading_check(p, p.window()));
    }
    Ok(r)
}

/// `trivial`, `adjoint` or a path to a JSON action section for `b`.
pub fn resolve_action(reference: &str, b: &MhaStructure) -> Result<Action> {
    let g = b.group();
    match reference.strip_prefix("builtin:").unwrap_or(reference) {
        "trivial" => Ok(Action::trivial()),
        "adjoint" => Ok(Action::adjoint(g)),
        path => {
            let text =
                std::fs::read_to_string(path).with_context(|| format!("reading action {path}"))?;
            let spec: ActionSpec =
                serde_json::from_str(&text).with_context(|| format!("parsing action {path}"))?;
            let w = Window::full(g)?;
            let dims = w
                .elements()
                .iter()
                .map(|&p| (p, b.dim(p)))
                .filter(|(_, d)| *d > 0)
                .collect();
            read_action(g, &dims, &spec)
        }
    }
}

pub fn double_spec(d: &DoubleStructure) -> Result<SpecFile> {
    let mut spec = write_table(d.table())?;
    if d.is_crossing() {
        spec.action = Some(action_spec(
            d.group(),
            &d.table().keys(),
            &double_crossing(d)?,
        )?);
    }
    Ok(spec)
}

pub struct Outcome {
    pub report: CertificateReport,
    /// `None` when construction was aborted.
    pub spec: Option<SpecFile>,
}

fn normalize_builtin(reference: &str) -> String {
    if reference.starts_with("builtin:")
        || Path::new(reference).exists()
        || reference.ends_with(".json")
    {
        reference.to_string()
    } else {
        format!("builtin:{reference}")
    }
}

/// Builds the double of a pairing twisted by an action, after checking admissibility.
pub fn double(pair: &str, action: &str) -> Result<Outcome> {
    let l = load(&normalize_builtin(pair))?;
    let p = l
        .pairing
        .clone()
        .ok_or_else(|| anyhow!("{pair} has no pairing section"))?;
    let a = resolve_action(action, p.b_side())?;
    let full = p.window().clone();
    let cert = check_admissible(p.b_side().as_ref(), &a, &full);
    let mut report = CertificateReport::new(full.describe(p.group()));
    let admissible = cert.passed();
    report.absorb("action", cert.report);
    if !admissible {
        report.note("action is not admissible: double not constructed");
        return Ok(Outcome { report, spec: None });
    }
    let d = build_double(&p, &a)?;
    report.absorb("", check_double_axioms(&d, &d.window()));
    let spec = double_spec(&d)?;
    report.spec_digest = Some(sha256_hex(spec.to_json().as_bytes()));
    report.note(format!(
        "double has dimension {} over {}",
        d.table().keys().len(),
        d.group().label()
    ));
    Ok(Outcome {
        report,
        spec: Some(spec),
    })
}

/// Deforms a cograded structure by an admissible action.
pub fn deform_cmd(reference: &str, action: &str) -> Result<Outcome> {
    let l = load(&normalize_builtin(reference))?;
    let a = resolve_action(action, &l.structure)?;
    let full =
        Window::full(l.group()).map_err(|_| anyhow!("deform exports need a finite group"))?;
    let cert = check_admissible(l.structure.as_ref(), &a, &full);
    let mut report = CertificateReport::new(full.describe(l.group()));
    let admissible = cert.passed();
    report.absorb("action", cert.report);
    if !admissible {
        report.note("action is not admissible: deformation not constructed");
        return Ok(Outcome { report, spec: None });
    }
    let d = deform(l.structure.clone(), &a, &full)?;
    report.absorb("", check_hopf(d.as_ref(), &full));
    report.absorb("", check_cograded(d.as_ref(), &full));
    let spec = write_table(&Tabulated::materialize(d.as_ref())?)?;
    report.spec_digest = Some(sha256_hex(spec.to_json().as_bytes()));
    Ok(Outcome {
        report,
        spec: Some(spec),
    })
}

fn partner_reference(reference: &str) -> String {
    if reference.starts_with("builtin:") {
        return reference.to_string();
    }
    std::fs::canonicalize(reference)
        .map(|p| p.display().to_string())
        .unwrap_or_else(|_| reference.to_string())
}

/// The reduced dual with its evaluation pairing section.
pub fn dual(reference: &str) -> Result<Outcome> {
    let reference = normalize_builtin(reference);
    let l = load(&reference)?;
    if !l.group().is_finite() {
        bail!("{} has infinitely many components", l.structure.label());
    }
    let rd = reduced_dual(&l.structure)?;
    let g = l.group();
    let full = Window::full(g)?;
    let mut spec = write_table(&rd.dual)?;
    spec.pairing = Some(PairingSpec {
        partner: partner_reference(&reference),
        forms: form_specs(rd.pairing.forms(), g),
    });
    let mut report = CertificateReport::new(full.describe(g));
    report.absorb("", check_hopf(rd.dual.as_ref(), &full));
    if rd.dual.grading == Grading::Cograded {
        report.absorb("", check_cograded(rd.dual.as_ref(), &full));
    }
    report.absorb("pairing", check_pairing(&rd.pairing, &full));
    report.absorb("pairing", induced_grading_check(&rd.pairing, &full));
    report.spec_digest = Some(sha256_hex(spec.to_json().as_bytes()));
    Ok(Outcome {
        report,
        spec: Some(spec),
    })
}

/// The canonical rendering of a reference.
pub fn export(reference: &str) -> Result<SpecFile> {
    let l = load(&normalize_builtin(reference))?;
    let mut spec = l.spec.ok_or_else(|| {
        anyhow!(
            "{} is over an infinite group and cannot be exported",
            l.reference
        )
    })?;
    if let Some(p) = &mut spec.pairing {
        if !p.partner.starts_with("builtin:") {
            let dir = Path::new(reference).parent().unwrap_or(Path::new("."));
            p.partner = partner_reference(&dir.join(&p.partner).display().to_string());
        }
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_kg_s3_verifies() {
        let r = verify(&load("builtin:kg-s3").unwrap(), None).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn infinite_builtin_needs_a_window() {
        let l = load("builtin:kg-integers").unwrap();
        assert!(verify(&l, None).is_err());
        let r = verify(&l, Some("-5..5")).unwrap();
        assert!(r.passed());
        assert!(r.window.iter().any(|w| w.contains("-5")), "{:?}", r.window);
    }

    #[test]
    fn broken_coassociativity_has_a_witness() {
        let mut spec = export("builtin:kg-z2").unwrap();
        let block = spec
            .delta_blocks
            .iter_mut()
            .find(|b| b.source.0 == "1" && b.left == "1")
            .unwrap();
        block.value[0].2 = "2".into();
        let l = Loaded::from_spec(spec, "broken", Path::new(".")).unwrap();
        let r = verify(&l, None).unwrap();
        let e = r
            .entries
            .iter()
            .find(|e| e.name.contains("coassociativ") && !e.passed)
            .expect("coassociativity fails");
        assert!(e.witness.is_some());
    }

    #[test]
    fn trivial_double_export_has_the_classical_size() {
        let out = double("pairing-gacs3", "trivial").unwrap();
        assert!(
            out.report.passed(),
            "{:?}",
            out.report.failures().collect::<Vec<_>>()
        );
        let spec = out.spec.unwrap();
        assert_eq!(spec.components.iter().map(|c| c.dim).sum::<usize>(), 36);
        assert_eq!(spec.products.len(), 36 * 6);
        assert!(spec.action.is_none());
    }

    #[test]
    fn non_admissible_action_aborts() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        let b = load("builtin:kg-s3").unwrap();
        let g = b.group().clone();
        let keys: Vec<_> = g.elements().unwrap().into_iter().map(|p| (p, 0)).collect();
        let mut spec = action_spec(&g, &keys, &Action::adjoint(&g)).unwrap();
        spec.images[1].value[0].2 = "2".into();
        std::fs::write(&path, serde_json::to_string(&spec).unwrap()).unwrap();
        let out = double("pairing-gacs3", path.to_str().unwrap()).unwrap();
        assert!(out.spec.is_none());
        assert!(!out.report.passed());
    }

    #[test]
    fn dual_of_functions_is_group_algebra_shaped() {
        let out = dual("builtin:kg-s3").unwrap();
        assert!(
            out.report.passed(),
            "{:?}",
            out.report.failures().collect::<Vec<_>>()
        );
        let spec = out.spec.unwrap();
        let expected = export("builtin:group-algebra-s3").unwrap();
        assert_eq!(spec.products, expected.products);
        assert_eq!(spec.delta_blocks, expected.delta_blocks);
    }

    #[test]
    fn dual_of_the_constant_family_has_two_dimensional_components() {
        let out = dual("builtin:constant-cz2-s3").unwrap();
        assert!(
            out.report.passed(),
            "{:?}",
            out.report.failures().collect::<Vec<_>>()
        );
        assert!(out.spec.unwrap().components.iter().all(|c| c.dim == 2));
    }

    #[test]
    fn dual_of_dual_matches_the_original() {
        let dir = tempfile::tempdir().unwrap();
        let first = dir.path().join("dual.json");
        std::fs::write(
            &first,
            dual("builtin:kg-s3").unwrap().spec.unwrap().to_json(),
        )
        .unwrap();
        let bidual = dual(first.to_str().unwrap()).unwrap();
        assert!(
            bidual.report.passed(),
            "{:?}",
            bidual.report.failures().collect::<Vec<_>>()
        );
        let mut spec = bidual.spec.unwrap();
        spec.pairing = None;
        let original = export("builtin:kg-s3").unwrap();
        assert_eq!(spec.products, original.products);
        assert_eq!(spec.delta_blocks, original.delta_blocks);
        assert_eq!(spec.counit, original.counit);
        assert_eq!(spec.antipode, original.antipode);
        assert_eq!(spec.star, original.star);
        assert_eq!(spec.units, original.units);
    }
}
