//! Structural comparison of two models of the same kind.
//!
//! Both models are lowered to a uniform tree (kind, name, scalar
//! properties, link targets, containment features) and compared feature by
//! feature. In order-sensitive mode children are paired by position and
//! links compare as fragment paths. In order-insensitive mode children are
//! paired by name and links compare by the names along the target's
//! containment chain, so two models that differ only in element order are
//! equal.

use std::fmt;

use thiserror::Error;

use crate::fragment::{FragmentPath, ModelElement};
use crate::metamodel::pim::{PimElement, UmlPackage};
use crate::metamodel::psm::{paths, CrudProjectPackage, PsmElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrderMode {
    #[default]
    Sensitive,
    Insensitive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiffKind {
    Added,
    Removed,
    Renamed,
    Relinked,
    /// A scalar property other than the name (parameter direction).
    Changed,
}

impl fmt::Display for DiffKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiffKind::Added => "added",
            DiffKind::Removed => "removed",
            DiffKind::Renamed => "renamed",
            DiffKind::Relinked => "relinked",
            DiffKind::Changed => "changed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffEntry {
    pub path: FragmentPath,
    pub kind: DiffKind,
    pub detail: String,
}

impl fmt::Display for DiffEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}", self.kind, self.path, self.detail)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StructuralDiff {
    pub entries: Vec<DiffEntry>,
}

impl StructuralDiff {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn count(&self, kind: DiffKind) -> usize {
        self.entries.iter().filter(|e| e.kind == kind).count()
    }
}

impl fmt::Display for StructuralDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub enum ModelRef<'a> {
    Pim(&'a UmlPackage),
    Psm(&'a CrudProjectPackage),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiffError {
    #[error("kind-mismatch: cannot compare a {0} with a {1}")]
    KindMismatch(&'static str, &'static str),
}

pub fn diff(a: ModelRef<'_>, b: ModelRef<'_>, mode: OrderMode) -> Result<StructuralDiff, DiffError> {
    match (a, b) {
        (ModelRef::Pim(a), ModelRef::Pim(b)) => Ok(diff_pim(a, b, mode)),
        (ModelRef::Psm(a), ModelRef::Psm(b)) => Ok(diff_psm(a, b, mode)),
        (ModelRef::Pim(_), ModelRef::Psm(_)) => Err(DiffError::KindMismatch("UmlPackage", "CrudProjectPackage")),
        (ModelRef::Psm(_), ModelRef::Pim(_)) => Err(DiffError::KindMismatch("CrudProjectPackage", "UmlPackage")),
    }
}

pub fn diff_psm(a: &CrudProjectPackage, b: &CrudProjectPackage, mode: OrderMode) -> StructuralDiff {
    let ta = build(PsmElement::Root(a), &|e| psm_info(a, e, mode));
    let tb = build(PsmElement::Root(b), &|e| psm_info(b, e, mode));
    run(&ta, &tb, mode)
}

pub fn diff_pim(a: &UmlPackage, b: &UmlPackage, mode: OrderMode) -> StructuralDiff {
    let ta = build(PimElement::Package(a), &pim_info);
    let tb = build(PimElement::Package(b), &pim_info);
    run(&ta, &tb, mode)
}

struct Info {
    kind: &'static str,
    name: Option<String>,
    props: Vec<(&'static str, String)>,
    links: Vec<(&'static str, Vec<String>)>,
}

struct Feature {
    name: String,
    many: bool,
    nodes: Vec<Node>,
}

struct Node {
    info: Info,
    features: Vec<Feature>,
}

fn build<'a, E: ModelElement<'a>>(element: E, info: &dyn Fn(E) -> Info) -> Node {
    let mut features: Vec<Feature> = Vec::new();
    for (seg, child) in element.children() {
        let node = build(child, info);
        match features.last_mut() {
            Some(f) if f.name == seg.feature => f.nodes.push(node),
            _ => features.push(Feature {
                name: seg.feature.clone(),
                many: seg.index.is_some(),
                nodes: vec![node],
            }),
        }
    }
    Node {
        info: info(element),
        features,
    }
}

fn pim_info(e: PimElement<'_>) -> Info {
    let mut props = Vec::new();
    let mut links = Vec::new();
    match e {
        PimElement::Attribute(a) => links.push(("type", vec![a.type_name.clone()])),
        PimElement::Parameter(p) => {
            links.push(("type", vec![p.type_name.clone()]));
            props.push(("direction", p.direction.to_string()));
        }
        _ => {}
    }
    Info {
        kind: e.kind(),
        name: Some(e.name().to_string()),
        props,
        links,
    }
}

/// Link key for a target path under the given mode.
fn link_key(model: &CrudProjectPackage, path: &FragmentPath, mode: OrderMode) -> String {
    match mode {
        OrderMode::Sensitive => path.to_string(),
        OrderMode::Insensitive => {
            let mut key = String::new();
            let mut prefix = FragmentPath::root();
            for seg in path.segments() {
                prefix = prefix.with(seg.clone());
                key.push('/');
                key.push_str(&seg.feature);
                if seg.index.is_some() {
                    let name = model.resolve(&prefix).ok().and_then(|e| e.name()).unwrap_or("?");
                    key.push('[');
                    key.push_str(name);
                    key.push(']');
                }
            }
            key
        }
    }
}

fn psm_info(model: &CrudProjectPackage, e: PsmElement<'_>, mode: OrderMode) -> Info {
    let key = |p: FragmentPath| link_key(model, &p, mode);
    let mut props = Vec::new();
    let mut links = Vec::new();
    match e {
        PsmElement::IDao(d) => links.push((
            "implementedBy",
            d.implemented_by
                .map(|r| key(paths::daoimpl(r.index())))
                .into_iter()
                .collect(),
        )),
        PsmElement::DaoImpl(d) => links.push((
            "interfaces",
            d.interfaces.iter().map(|r| key(paths::dao(r.index()))).collect(),
        )),
        PsmElement::Pojo(p) => links.push(("dto", p.dto.map(|r| key(paths::dto(r.index()))).into_iter().collect())),
        PsmElement::Dto(d) => links.push((
            "pojos",
            d.pojo.map(|r| key(paths::pojo(r.index()))).into_iter().collect(),
        )),
        PsmElement::IService(s) => links.push((
            "implementedBy",
            s.implemented_by
                .map(|r| key(paths::serviceimpl(r.index())))
                .into_iter()
                .collect(),
        )),
        PsmElement::ServiceImpl(s) => links.push((
            "interfaces",
            s.interfaces.iter().map(|r| key(paths::service(r.index()))).collect(),
        )),
        PsmElement::Action(a) => {
            links.push((
                "form",
                a.form.map(|r| key(paths::form(r.index()))).into_iter().collect(),
            ));
            links.push((
                "forward",
                a.forward
                    .map(|f| key(paths::page(f.target.index())))
                    .into_iter()
                    .collect(),
            ));
        }
        PsmElement::ActionForm(f) => {
            links.push(("attribute", vec![key(paths::action(f.attribute.index()))]));
            links.push(("input", vec![key(paths::page(f.input.index()))]));
        }
        PsmElement::Attribute(a) => links.push(("type", vec![a.type_name.clone()])),
        PsmElement::Parameter(p) => {
            links.push(("type", vec![p.type_name.clone()]));
            props.push(("direction", p.direction.to_string()));
        }
        _ => {}
    }
    if mode == OrderMode::Insensitive {
        for (_, targets) in &mut links {
            if !matches!(e, PsmElement::Attribute(_) | PsmElement::Parameter(_)) {
                targets.sort();
            }
        }
    }
    Info {
        kind: e.kind(),
        name: e.name().map(str::to_string),
        props,
        links,
    }
}

fn run(a: &Node, b: &Node, mode: OrderMode) -> StructuralDiff {
    let mut out = StructuralDiff::default();
    compare(a, b, &FragmentPath::root(), &FragmentPath::root(), mode, &mut out);
    out
}

fn describe(node: &Node) -> String {
    match &node.info.name {
        Some(n) => format!("{} {n}", node.info.kind),
        None => node.info.kind.to_string(),
    }
}

fn compare(a: &Node, b: &Node, pa: &FragmentPath, pb: &FragmentPath, mode: OrderMode, out: &mut StructuralDiff) {
    let push = |out: &mut StructuralDiff, path: &FragmentPath, kind, detail: String| {
        out.entries.push(DiffEntry {
            path: path.clone(),
            kind,
            detail,
        })
    };
    if a.info.name != b.info.name {
        push(
            out,
            pa,
            DiffKind::Renamed,
            format!(
                "{} -> {}",
                a.info.name.as_deref().unwrap_or(""),
                b.info.name.as_deref().unwrap_or("")
            ),
        );
    }
    for ((key, va), (_, vb)) in a.info.props.iter().zip(&b.info.props) {
        if va != vb {
            push(out, pa, DiffKind::Changed, format!("{key}: {va} -> {vb}"));
        }
    }
    for ((key, la), (_, lb)) in a.info.links.iter().zip(&b.info.links) {
        if la != lb {
            push(
                out,
                pa,
                DiffKind::Relinked,
                format!("{key}: [{}] -> [{}]", la.join(" "), lb.join(" ")),
            );
        }
    }

    let empty: Vec<Node> = Vec::new();
    let mut names: Vec<(&str, bool)> = a.features.iter().map(|f| (f.name.as_str(), f.many)).collect();
    for f in &b.features {
        if !names.iter().any(|(n, _)| *n == f.name) {
            names.push((&f.name, f.many));
        }
    }
    for (feature, many) in names {
        let ca = a
            .features
            .iter()
            .find(|f| f.name == feature)
            .map_or(&empty, |f| &f.nodes);
        let cb = b
            .features
            .iter()
            .find(|f| f.name == feature)
            .map_or(&empty, |f| &f.nodes);
        let child_a = |i: usize| if many { pa.item(feature, i) } else { pa.child(feature) };
        let child_b = |i: usize| if many { pb.item(feature, i) } else { pb.child(feature) };

        let pairs: Vec<(Option<usize>, Option<usize>)> = match mode {
            OrderMode::Sensitive => (0..ca.len().max(cb.len()))
                .map(|i| ((i < ca.len()).then_some(i), (i < cb.len()).then_some(i)))
                .collect(),
            OrderMode::Insensitive => {
                let mut taken = vec![false; cb.len()];
                let mut pairs = Vec::new();
                for (i, na) in ca.iter().enumerate() {
                    let m = (0..cb.len()).find(|&j| !taken[j] && cb[j].info.name == na.info.name);
                    if let Some(j) = m {
                        taken[j] = true;
                    }
                    pairs.push((Some(i), m));
                }
                pairs.extend((0..cb.len()).filter(|&j| !taken[j]).map(|j| (None, Some(j))));
                pairs
            }
        };
        for pair in pairs {
            match pair {
                (Some(i), Some(j)) => compare(&ca[i], &cb[j], &child_a(i), &child_b(j), mode, out),
                (Some(i), None) => push(out, &child_a(i), DiffKind::Removed, describe(&ca[i])),
                (None, Some(j)) => push(out, &child_b(j), DiffKind::Added, describe(&cb[j])),
                (None, None) => {}
            }
        }
    }
}
