#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use ntiers_core::metamodel::pim::{UmlClass, UmlOperation, UmlPackage};
use ntiers_core::metamodel::psm::{
    Action, ActionForm, ActionForward, AttributeDecl, CrudProjectPackage, DaoImpl, Dto, IDao, IService, JspPage,
    MethodDecl, ParameterDecl, Pojo, Ref, ServiceImpl,
};
use ntiers_core::metamodel::Direction;
use rand::seq::SliceRandom;
use rand::Rng;

pub const CRUD: [&str; 4] = ["create", "remove", "update", "display"];
pub const LAB_CLASSES: [&str; 4] = ["Patient", "Request", "Result", "Sample"];

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn upper_first(s: &str) -> String {
    let mut cs = s.chars();
    match cs.next() {
        Some(c) => c.to_uppercase().chain(cs).collect(),
        None => String::new(),
    }
}

fn decl(op: &UmlOperation) -> MethodDecl {
    MethodDecl {
        name: op.name.clone(),
        parameters: op
            .parameters
            .iter()
            .map(|p| ParameterDecl {
                name: p.name.clone(),
                type_name: p.type_name.clone(),
                direction: p.direction,
            })
            .collect(),
    }
}

/// Builds the expected PSM straight from the count and naming laws, without
/// going through the rule functions.
pub fn oracle(pim: &UmlPackage) -> CrudProjectPackage {
    let mut m = CrudProjectPackage::new(format!("crud{}", pim.name));
    for (i, c) in pim.classes.iter().enumerate() {
        let attrs: Vec<AttributeDecl> = c
            .attributes
            .iter()
            .map(|a| AttributeDecl {
                name: a.name.clone(),
                type_name: a.type_name.clone(),
            })
            .collect();
        let methods: Vec<MethodDecl> = c.operations.iter().map(decl).collect();
        let dp = &mut m.dao_package;
        dp.pojos.push(Pojo {
            name: c.name.clone(),
            attributes: attrs.clone(),
            dto: Some(Ref::new(i)),
        });
        dp.daos.push(IDao {
            name: format!("I{}Dao", c.name),
            methods: methods.clone(),
            implemented_by: Some(Ref::new(i)),
        });
        dp.daoimpls.push(DaoImpl {
            name: format!("{}DaoImpl", c.name),
            interfaces: vec![Ref::new(i)],
        });
        let bp = &mut m.business_package;
        bp.dtos.push(Dto {
            name: format!("{}DTO", c.name),
            attributes: attrs,
            pojo: Some(Ref::new(i)),
        });
        bp.services.push(IService {
            name: format!("I{}Service", c.name),
            methods,
            implemented_by: Some(Ref::new(i)),
        });
        bp.serviceimpls.push(ServiceImpl {
            name: format!("{}ServiceImpl", c.name),
            interfaces: vec![Ref::new(i)],
        });
    }

    let mut pages: Vec<JspPage> = Vec::new();
    let mut own_page: Vec<Vec<Option<usize>>> = Vec::new();
    for c in &pim.classes {
        let mut row = Vec::new();
        for o in &c.operations {
            if o.name.to_lowercase() == "remove" {
                row.push(None);
            } else {
                row.push(Some(pages.len()));
                pages.push(JspPage {
                    name: format!("{}{}Page.jsp", upper_first(&o.name), c.name),
                });
            }
        }
        own_page.push(row);
    }

    let mut actions: Vec<Action> = Vec::new();
    let mut forms: Vec<ActionForm> = Vec::new();
    for (ci, c) in pim.classes.iter().enumerate() {
        let display = c
            .operations
            .iter()
            .position(|o| o.name.to_lowercase() == "display")
            .and_then(|oi| own_page[ci][oi]);
        for (oi, o) in c.operations.iter().enumerate() {
            let own = own_page[ci][oi];
            let forward = display.or(own).map(|p| ActionForward { target: Ref::new(p) });
            let cap = upper_first(&o.name);
            actions.push(Action {
                name: format!("{cap}{}Action", c.name),
                forward,
                form: None,
            });
            let lower = o.name.to_lowercase();
            if lower == "create" || lower == "update" {
                let end = actions.len();
                actions.push(Action {
                    name: format!("{cap}{}EndAction", c.name),
                    forward,
                    form: Some(Ref::new(forms.len())),
                });
                forms.push(ActionForm {
                    name: format!("{cap}{}Form", c.name),
                    input: Ref::new(own.expect("create/update always have a page")),
                    attribute: Ref::new(end),
                });
            }
        }
    }
    m.ui_package.view_package.pages = pages;
    m.ui_package.controller_package.action_mapping.actions = actions;
    m.ui_package.controller_package.action_mapping.forms = forms;
    m
}

/// Every PIM with at most `max_classes` classes whose operations are a subset
/// of the CRUD names in canonical order.
pub fn crud_subset_pims(max_classes: usize) -> Vec<UmlPackage> {
    const NAMES: [&str; 3] = ["Patient", "Request", "Sample"];
    let subsets: Vec<Vec<&str>> = (0u32..16)
        .map(|mask| (0..4).filter(|b| mask & (1 << b) != 0).map(|b| CRUD[b]).collect())
        .collect();
    let mut out = Vec::new();
    for n in 0..=max_classes {
        let total = subsets.len().pow(n as u32);
        for mut code in 0..total {
            let mut pkg = UmlPackage::new("lab").with_datatype("Integer");
            for name in NAMES.iter().take(n) {
                let ops = &subsets[code % subsets.len()];
                code /= subsets.len();
                let mut class = UmlClass::new(*name).with_attribute("id", "Integer");
                for op in ops {
                    class = class.with_operation(UmlOperation::new(*op).with_parameter("id", "Integer", Direction::In));
                }
                pkg = pkg.with_class(class);
            }
            out.push(pkg);
        }
    }
    out
}

/// Every ordering of every CRUD subset for one class.
pub fn crud_arrangements() -> Vec<UmlPackage> {
    fn extend(prefix: &mut Vec<&'static str>, out: &mut Vec<Vec<&'static str>>) {
        out.push(prefix.clone());
        for op in CRUD {
            if !prefix.contains(&op) {
                prefix.push(op);
                extend(prefix, out);
                prefix.pop();
            }
        }
    }
    let mut orders = Vec::new();
    extend(&mut Vec::new(), &mut orders);
    orders
        .into_iter()
        .map(|ops| {
            let class = ops.iter().fold(UmlClass::new("Foo"), |c, op| c.with_op(*op));
            UmlPackage::new("p").with_class(class)
        })
        .collect()
}

fn random_ident<R: Rng>(rng: &mut R, capital: bool) -> String {
    const LOWER: &[u8] = b"abcdefghijklmnopqrstuvwxyz";
    const TAIL: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_";
    let len = rng.gen_range(1..=8);
    let mut s = String::with_capacity(len);
    let first = LOWER[rng.gen_range(0..LOWER.len())] as char;
    s.push(if capital { first.to_ascii_uppercase() } else { first });
    for _ in 1..len {
        s.push(TAIL[rng.gen_range(0..TAIL.len())] as char);
    }
    s
}

/// A random PIM that is usually, but not always, valid; callers filter with
/// `validate_pim`.
pub fn random_pim<R: Rng>(rng: &mut R) -> UmlPackage {
    const TYPES: [&str; 3] = ["Integer", "String", "Date"];
    let mut pkg = UmlPackage::new(random_ident(rng, false));
    for t in TYPES {
        pkg = pkg.with_datatype(t);
    }
    let n_classes = rng.gen_range(0..=20);
    let names: Vec<String> = (0..n_classes).map(|_| random_ident(rng, true)).collect();
    let mut type_pool: Vec<&str> = TYPES.to_vec();
    type_pool.extend(names.iter().map(String::as_str));
    for name in &names {
        let mut class = UmlClass::new(name.clone());
        for _ in 0..rng.gen_range(0..=4) {
            let t = *type_pool.choose(rng).unwrap();
            class = class.with_attribute(random_ident(rng, false), t);
        }
        let n_ops = rng.gen_range(0..=8);
        let mut used = Vec::new();
        for _ in 0..n_ops {
            let op_name = if rng.gen_bool(0.6) {
                let base = *CRUD.choose(rng).unwrap();
                if rng.gen_bool(0.15) {
                    upper_first(base)
                } else {
                    base.to_string()
                }
            } else {
                random_ident(rng, false)
            };
            if used.contains(&op_name.to_lowercase()) {
                continue;
            }
            used.push(op_name.to_lowercase());
            let mut op = UmlOperation::new(op_name);
            for _ in 0..rng.gen_range(0..=3) {
                let t = *type_pool.choose(rng).unwrap();
                let dir = if rng.gen_bool(0.8) {
                    Direction::In
                } else {
                    Direction::Out
                };
                op = op.with_parameter(random_ident(rng, false), t, dir);
            }
            class = class.with_operation(op);
        }
        pkg = pkg.with_class(class);
    }
    pkg
}

/// Checks the count, naming and method-fidelity laws; returns the violations.
pub fn law_violations(pim: &UmlPackage, psm: &CrudProjectPackage) -> Vec<String> {
    let mut v = Vec::new();
    let n = pim.classes.len();
    let dp = &psm.dao_package;
    let bp = &psm.business_package;
    let am = psm.action_mapping();
    let counts = [
        ("pojos", dp.pojos.len()),
        ("daos", dp.daos.len()),
        ("daoimpls", dp.daoimpls.len()),
        ("dtos", bp.dtos.len()),
        ("services", bp.services.len()),
        ("serviceimpls", bp.serviceimpls.len()),
    ];
    for (what, got) in counts {
        if got != n {
            v.push(format!("{what}: {got} != {n}"));
        }
    }
    let lower_ops = || {
        pim.classes
            .iter()
            .flat_map(|c| c.operations.iter().map(|o| o.name.to_lowercase()))
    };
    let pages = lower_ops().filter(|o| o != "remove").count();
    let actions: usize = lower_ops()
        .map(|o| if o == "create" || o == "update" { 2 } else { 1 })
        .sum();
    let forms = lower_ops().filter(|o| o == "create" || o == "update").count();
    for (what, got, want) in [
        ("pages", psm.pages().len(), pages),
        ("actions", am.actions.len(), actions),
        ("forms", am.forms.len(), forms),
    ] {
        if got != want {
            v.push(format!("{what}: {got} != {want}"));
        }
    }
    if v.is_empty() {
        for (i, c) in pim.classes.iter().enumerate() {
            let expect = [
                (&dp.pojos[i].name, c.name.clone()),
                (&dp.daos[i].name, format!("I{}Dao", c.name)),
                (&dp.daoimpls[i].name, format!("{}DaoImpl", c.name)),
                (&bp.dtos[i].name, format!("{}DTO", c.name)),
                (&bp.services[i].name, format!("I{}Service", c.name)),
                (&bp.serviceimpls[i].name, format!("{}ServiceImpl", c.name)),
            ];
            for (got, want) in expect {
                if *got != want {
                    v.push(format!("name {got} != {want}"));
                }
            }
            let methods: Vec<MethodDecl> = c.operations.iter().map(decl).collect();
            if dp.daos[i].methods != methods || bp.services[i].methods != methods {
                v.push(format!("method declarations differ for {}", c.name));
            }
        }
        let mut want_pages = Vec::new();
        let mut want_actions = Vec::new();
        let mut want_forms = Vec::new();
        for c in &pim.classes {
            for o in &c.operations {
                let cap = upper_first(&o.name);
                let lower = o.name.to_lowercase();
                if lower != "remove" {
                    want_pages.push(format!("{cap}{}Page.jsp", c.name));
                }
                want_actions.push(format!("{cap}{}Action", c.name));
                if lower == "create" || lower == "update" {
                    want_actions.push(format!("{cap}{}EndAction", c.name));
                    want_forms.push(format!("{cap}{}Form", c.name));
                }
            }
        }
        let names = |it: &mut dyn Iterator<Item = &String>| it.cloned().collect::<Vec<_>>();
        if names(&mut psm.pages().iter().map(|p| &p.name)) != want_pages {
            v.push("page names".into());
        }
        if names(&mut am.actions.iter().map(|a| &a.name)) != want_actions {
            v.push("action names".into());
        }
        if names(&mut am.forms.iter().map(|f| &f.name)) != want_forms {
            v.push("form names".into());
        }
    }
    v
}

/// Relative path to file contents for every file under `root`.
pub fn snapshot(root: &Path) -> BTreeMap<String, Vec<u8>> {
    fn go(base: &Path, dir: &Path, out: &mut BTreeMap<String, Vec<u8>>) {
        let mut entries: Vec<_> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
        entries.sort();
        for p in entries {
            if p.is_dir() {
                go(base, &p, out);
            } else {
                let rel = p.strip_prefix(base).unwrap().to_string_lossy().replace('\\', "/");
                out.insert(rel, std::fs::read(&p).unwrap());
            }
        }
    }
    let mut out = BTreeMap::new();
    go(root, root, &mut out);
    out
}
