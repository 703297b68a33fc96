//! Acceptance gate: one PASS/FAIL line per criterion, exact integer equality.

use std::collections::{BTreeMap, HashMap};
use std::process::ExitCode;
use std::time::Instant;

use jacsyz_core::exactla::PrimeField;
use jacsyz_core::families::{
    build, build_thm62_arrangement, nodal_arrangement, nodal_lines, product, rk63_lines, search,
    thm62_arrangement_lines, Line, Registry, SearchRequest, Template, DEFAULT_POOL,
};
use jacsyz_core::polycore::HomPoly;
use jacsyz_core::syzres::{resolve, saturation_profile, Arithmetic, Resolution, ResolveOptions};
use num_integer::Integer;
use rayon::prelude::*;

/// Criteria that cannot pass as stated, with the reason printed next to them.
const KNOWN_FAILURES: &[(&str, &str)] = &[(
    "6",
    "the ex5.4:C' entry is a product of 10 lines and computes as maximal Tjurina of type (10,7,7) with tau=52; \
     a 9-line arrangement with mdr = d-2 is nodal with tau=36, so type (9,7,7) with tau=35 cannot occur",
)];

struct Lab {
    registry: Registry,
    cache: HashMap<String, Resolution>,
    /// Registry id of each cached polynomial.
    names: HashMap<String, String>,
}

impl Lab {
    fn new() -> Self {
        let registry = Registry::shipped();
        let mut names = HashMap::new();
        let mut polys: Vec<(String, HomPoly)> = Vec::new();
        for e in registry.select(None, false) {
            let f = e.polynomial().unwrap_or_else(|err| panic!("{}: {err}", e.id));
            let key = f.to_string();
            if names.insert(key.clone(), e.id.clone()).is_none() {
                polys.push((key, f));
            }
        }
        let cache = polys
            .into_par_iter()
            .map(|(k, f)| {
                let res = resolve(&f, &ResolveOptions::default()).unwrap_or_else(|e| panic!("{k}: {e}"));
                (k, res)
            })
            .collect();
        Lab { registry, cache, names }
    }

    fn name<'a>(&'a self, key: &'a str) -> &'a str {
        self.names.get(key).map(String::as_str).unwrap_or(key)
    }

    /// Cached keys in registry-id order.
    fn keys(&self) -> Vec<&String> {
        let mut keys: Vec<&String> = self.cache.keys().collect();
        keys.sort_by_key(|k| self.name(k).to_string());
        keys
    }

    fn poly(&self, id: &str) -> HomPoly {
        self.registry.get(id).unwrap_or_else(|| panic!("no entry {id}")).polynomial().unwrap()
    }

    fn of(&mut self, f: &HomPoly) -> &Resolution {
        self.cache.entry(f.to_string()).or_insert_with(|| resolve(f, &ResolveOptions::default()).unwrap())
    }

    fn id(&mut self, id: &str) -> &Resolution {
        let f = self.poly(id);
        self.of(&f)
    }
}

struct Criterion {
    items: Vec<(bool, String)>,
}

impl Criterion {
    fn new() -> Self {
        Criterion { items: Vec::new() }
    }

    fn item(&mut self, ok: bool, text: impl Into<String>) {
        self.items.push((ok, text.into()));
    }

    fn passed(&self) -> bool {
        !self.items.is_empty() && self.items.iter().all(|(ok, _)| *ok)
    }
}

fn summary(r: &Resolution) -> String {
    let d = &r.data;
    format!("d={} exponents={:?} m={} eps={:?} tau={}", d.d, d.exponents, d.m, d.epsilons, d.tau)
}

fn params(key: &str, v: i64) -> BTreeMap<String, i64> {
    BTreeMap::from([(key.to_string(), v)])
}

fn is_type(r: &Resolution, d: u32, rr: u32, m: usize) -> bool {
    r.data.d == d && r.data.m == m && r.data.exponents.iter().all(|&e| e == rr)
}

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

fn c1(lab: &mut Lab) -> Criterion {
    let mut c = Criterion::new();
    for d in 3..=9u32 {
        let r = lab.of(&build("fermat", &params("d", d as i64)).unwrap()).clone();
        let ok = r.data.exponents == vec![d - 1; 3] && r.data.m == 3 && r.data.tau == 0;
        c.item(ok, format!("fermat d={d}: {}", summary(&r)));
    }
    for d in 5..=12u32 {
        let r = lab.of(&build("prop4.2", &params("d", d as i64)).unwrap()).clone();
        let ok = r.data.tau != 0 && r.data.tau == 3 * (d as usize - 2);
        c.item(ok, format!("prop4.2 d={d}: tau={}", r.data.tau));
    }
    c
}

fn c2(lab: &mut Lab) -> Criterion {
    let mut c = Criterion::new();
    for d in 5..=12u32 {
        let r = lab.of(&build("prop4.2", &params("d", d as i64)).unwrap());
        let dm = d as i64 - 4;
        let ok = is_type(r, d, d - 2, 3)
            && r.data.tau == 3 * (d as usize - 2)
            && r.data.epsilons == vec![dm + 1]
            && r.data.relation_degrees == vec![3 * (d - 2)];
        c.item(ok, format!("d={d}: {} e={:?}", summary(r), r.data.relation_degrees));
    }
    c
}

fn c3(lab: &mut Lab) -> Criterion {
    let mut c = Criterion::new();
    for d in 8..=12u32 {
        let r = lab.of(&build("prop4.3", &params("d", d as i64)).unwrap());
        let ok = is_type(r, d, d - 3, 3) && r.data.tau == 6 * (d as usize - 3);
        c.item(ok, format!("d={d}: {}", summary(r)));
    }
    c
}

fn c4(lab: &mut Lab) -> Criterion {
    let mut c = Criterion::new();
    let r = lab.id("rk4.2");
    let ok = r.data.d == 11 && r.data.exponents == vec![6, 6, 6, 7] && r.data.m == 4 && r.data.tau == 72;
    c.item(ok, summary(r));
    c
}

fn c5(lab: &mut Lab) -> Criterion {
    let mut c = Criterion::new();
    let cases: [(&str, u32, u32); 7] = [
        ("ex4.5:C", 7, 4),
        ("ex4.5:C'", 7, 4),
        ("ex4.6:C", 9, 5),
        ("ex4.6:C'", 10, 6),
        ("ex4.7:C", 11, 6),
        ("ex4.7:C'", 12, 7),
        ("ex4.7:C''", 13, 8),
    ];
    for (id, d, r) in cases {
        let res = lab.id(id);
        c.item(is_type(res, d, r, 3), format!("{id} expects ({d},{r},3): {}", summary(res)));
    }
    for k in 3..=4u32 {
        let res = lab.of(&build("ex4.8", &params("k", k as i64)).unwrap());
        let ok = is_type(res, 3 * k + 1, 2 * k, 3);
        c.item(ok, format!("ex4.8 k={k} expects ({},{},3): {}", 3 * k + 1, 2 * k, summary(res)));
    }
    c
}

fn c6(lab: &mut Lab) -> Criterion {
    let mut c = Criterion::new();
    let typed: [(&str, u32, u32, usize, usize); 9] = [
        ("ex5.1:C", 6, 4, 4, 14),
        ("ex5.1:C'", 8, 5, 4, 32),
        ("ex5.1:C''", 10, 6, 4, 56),
        ("ex5.3:C", 10, 7, 6, 51),
        ("ex5.3:C'", 12, 9, 6, 72),
        ("ex5.4:C", 10, 7, 5, 50),
        ("ex5.4:C'", 9, 7, 7, 35),
        ("ex5.4:C''", 12, 10, 9, 63),
        ("ex5.4:C'''", 12, 10, 10, 65),
    ];
    for (id, d, r, m, tau) in typed {
        let res = lab.id(id);
        let ok = is_type(res, d, r, m) && res.data.tau == tau;
        c.item(ok, format!("{id} expects ({d},{r},{m}) tau={tau}: {}", summary(res)));
    }
    let families: [(&str, std::ops::RangeInclusive<i64>, fn(i64) -> i64); 4] = [
        ("ex5.1", 6..=12, |d| 2 * (2 * d - 5)),
        ("ex5.2", 7..=12, |d| 5 * (d - 3)),
        ("ex5.3", 8..=12, |d| 3 * (2 * d - 7)),
        ("ex5.4", 8..=12, |d| 8 * d - 37),
    ];
    for (name, range, tau) in families {
        for d in range {
            let res = lab.of(&build(name, &params("d", d)).unwrap());
            let want = tau(d);
            c.item(res.data.tau as i64 == want, format!("{name} d={d} expects tau={want}: {}", summary(res)));
        }
    }
    let entry = lab.registry.get("ex5.2:C'").unwrap().clone();
    let claimed = entry.expected.as_ref().and_then(|e| e.tau).unwrap();
    let res = lab.id("ex5.2:C'");
    c.item(
        entry.flagged && claimed == 32,
        format!("ex5.2 C' reported against flagged claim tau={claimed}: computed {}", summary(res)),
    );
    c
}

/// `c` in `tau = d(d-1)/2 + r(d-r-2) - c`, keyed by the sorted tail of ε.
fn closed_form_defect(dm: i64, eps: &[i64]) -> Option<i64> {
    let tail: Vec<i64> = eps.iter().copied().filter(|&e| e > 1).collect();
    match (dm, tail.as_slice()) {
        (1, [2]) => Some(1),
        (2, [3]) => Some(3),
        (2, [2, 2]) => Some(2),
        (3, [4]) => Some(6),
        (3, [2, 3]) => Some(4),
        (3, [2, 2, 2]) => Some(3),
        _ => None,
    }
}

fn c7(lab: &Lab) -> Criterion {
    let mut c = Criterion::new();
    let (mut higher, mut three, mut general) = (0, 0, 0);
    for key in lab.keys() {
        let data = &lab.cache[key].data;
        let k = lab.name(key);
        let d = data.d as i64;
        let e: Vec<i64> = data.exponents.iter().map(|&x| x as i64).collect();
        let tau = data.tau as i64;
        if data.m == 3 {
            general += 1;
            let want = (d - 1) * (e[0] + e[1] + e[2]) - (e[0] * e[1] + e[1] * e[2] + e[0] * e[2]);
            c.item(tau == want, format!("3-syzygy {k}: tau={tau} formula={want}"));
        }
        if data.common_exponent().is_none() {
            continue;
        }
        let r = e[0];
        let dm = 2 * r - d + 3 - data.m as i64;
        if data.m == 3 {
            three += 1;
            let want = 3 * r * (d - 1 - r);
            c.item(tau == want, format!("m=3 {k}: tau={tau} 3r(d-1-r)={want}"));
        } else if data.m > 3 && (1..=3).contains(&dm) {
            higher += 1;
            let mut eps = data.epsilons.clone();
            eps.sort();
            match closed_form_defect(dm, &eps) {
                Some(defect) => {
                    let want = d * (d - 1) / 2 + r * (d - r - 2) - defect;
                    c.item(tau == want, format!("dm={dm} eps={eps:?} {k}: tau={tau} formula={want}"));
                }
                None => c.item(false, format!("dm={dm} {k}: eps {eps:?} matches no case")),
            }
        }
    }
    c.item(
        higher > 0 && three > 0 && general > 0,
        format!("{higher} curves m>3, {three} of type m=3, {general} 3-syzygy"),
    );
    c
}

fn c8(lab: &Lab) -> Criterion {
    let mut c = Criterion::new();
    let keys = lab.keys();
    let mut bad = Vec::new();
    let (mut free, mut nearly) = (0, 0);
    for k in &keys {
        let data = &lab.cache[*k].data;
        let (d, r) = (data.d as i64, data.exponents[0] as i64);
        let tau = data.tau as i64;
        let tau_min = (d - 1) * (d - r - 1);
        let tau_max = (d - 1) * (d - 1) - r * (d - r - 1);
        let is_free = data.m == 2;
        let e = &data.exponents;
        let is_nearly = data.m == 3 && (e[0] + e[1]) as i64 == d && e[1] == e[2];
        free += is_free as usize;
        nearly += is_nearly as usize;
        let mut ok = tau_min <= tau && tau <= tau_max;
        if 2 * r >= d {
            ok &= tau <= tau_max - binom2(2 * r + 2 - d);
        }
        ok &= (tau == tau_max) == is_free;
        ok &= (tau == tau_max - 1) == is_nearly;
        if !ok {
            bad.push(format!("{}: {}", lab.name(k), summary(&lab.cache[*k])));
        }
    }
    c.item(bad.is_empty(), format!("{} curves, {free} free, {nearly} nearly free, violations {bad:?}", keys.len()));
    c
}

/// Intersection multiplicities computed from scratch with `i128` cross products.
fn multiplicities(lines: &[Line]) -> BTreeMap<[i128; 3], Vec<usize>> {
    let mut points: BTreeMap<[i128; 3], Vec<usize>> = BTreeMap::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (a, b) = (lines[i].map(i128::from), lines[j].map(i128::from));
            let mut p = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
            let g = p.iter().fold(0i128, |g, x| g.gcd(x));
            assert!(g != 0, "parallel lines {i}, {j}");
            let sign = if p.iter().find(|&&x| x != 0).unwrap() < &0 { -1 } else { 1 };
            p = p.map(|x| sign * x / g);
            let on = points.entry(p).or_default();
            for l in [i, j] {
                if !on.contains(&l) {
                    on.push(l);
                }
            }
        }
    }
    points
}

fn c9(lab: &mut Lab) -> Criterion {
    let mut c = Criterion::new();
    for d in 4..=8u32 {
        let f = nodal_arrangement(d, 0).unwrap();
        let res = lab.of(&f);
        let r = d - 2;
        let ok = res.profile.mdr == Some(r)
            && is_type(res, d, r, (d - 1) as usize)
            && res.data.tau as i64 == binom2(d as i64)
            && 2 * r + 3 - d == d - 1;
        c.item(ok, format!("nodal d={d}: mdr={:?} {}", res.profile.mdr, summary(res)));
    }
    for k in 2..=6u32 {
        let f = build_thm62_arrangement(k).unwrap();
        let lines = thm62_arrangement_lines(k).unwrap();
        let triples: Vec<_> = multiplicities(&lines).into_iter().filter(|(_, l)| l.len() == 3).collect();
        let on_axis = triples.iter().all(|(p, _)| p[1] == 0);
        let res = lab.of(&f);
        let (d, r) = (2 * k + 1, 2 * k - 2);
        let mut ok = is_type(res, d, r, k as usize) && res.data.tau as u32 == k * (2 * k + 1) + k;
        if k >= 4 {
            ok &= res.data.epsilons.iter().all(|&e| e == 2);
        }
        ok &= triples.len() == k as usize && on_axis;
        c.item(ok, format!("thm6.2 k={k}: {} triple points={} all on y=0: {on_axis}", summary(res), triples.len()));
    }
    let expected: [(u32, Vec<u32>); 3] = [(3, vec![3, 3, 4]), (4, vec![5, 5, 5, 6]), (5, vec![7, 7, 7, 7, 8])];
    for (k, exps) in expected {
        let res = lab.of(&product(&rk63_lines(k)));
        c.item(res.data.exponents == exps, format!("rk6.3 k={k} expects {exps:?}: {}", summary(res)));
    }
    c
}

/// `(1-t)^3 H(t)` from the Hilbert function, with `H` constant `tau` from degree `K` on.
fn hilbert_numerator(dims: &[usize], tau: usize) -> Vec<i64> {
    let k = dims.len() - 1;
    let mut h: Vec<i64> = dims[..k].iter().map(|&x| x as i64).collect();
    h.extend([0, 0, 0]);
    let mut n = vec![0i64; k + 3];
    for (i, &hi) in h.iter().enumerate().take(k) {
        for (j, c) in [1, -3, 3, -1].into_iter().enumerate() {
            if i + j < n.len() {
                n[i + j] += c * hi;
            }
        }
    }
    for (j, c) in [1, -2, 1].into_iter().enumerate() {
        n[k + j] += c * tau as i64;
    }
    while n.last() == Some(&0) {
        n.pop();
    }
    n
}

fn betti(d: u32, exps: &[u32], rels: &[u32]) -> Vec<i64> {
    let top = exps.iter().chain(rels).map(|&e| (e + d) as usize).max().unwrap_or(d as usize) + 1;
    let mut p = vec![0i64; top];
    p[0] = 1;
    p[(d - 1) as usize] -= 3;
    for &e in exps {
        p[(d - 1 + e) as usize] += 1;
    }
    for &e in rels {
        p[e as usize] -= 1;
    }
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn c10(lab: &mut Lab, certificates_ok: (bool, String)) -> Criterion {
    let mut c = Criterion::new();
    let arith = Arithmetic::Rational;
    let sample = [
        "fermat:d=4",
        "fermat:d=5",
        "prop4.2:d=5",
        "prop4.2:d=6",
        "ex4.5:C",
        "ex5.1:C",
        "nodal:d=5",
        "thm6.2:k=2",
        "thm6.2:k=3",
        "rk6.3:k=3",
    ];
    let mut asym = Vec::new();
    for id in sample {
        let s = saturation_profile(&lab.poly(id), arith).unwrap();
        if !s.asymmetries().is_empty() {
            asym.push(format!("{id}: {:?}", s.n_dims));
        }
    }
    c.item(asym.is_empty(), format!("(a) n(f)_a = n(f)_(T-a) on {} curves, asymmetric {asym:?}", sample.len()));
    for d in [4u32, 6, 8] {
        let s = saturation_profile(&nodal_arrangement(d, 0).unwrap(), arith).unwrap();
        let ok = s.n_dims[..=(d - 2) as usize].iter().all(|&x| x == 0);
        c.item(ok, format!("(b) nodal d'={d}: n(f') = {:?}", s.n_dims));
    }
    let keys: Vec<String> = lab.keys().into_iter().cloned().collect();
    let (mut closure_bad, mut ident_bad) = (Vec::new(), Vec::new());
    for k in &keys {
        let res = &lab.cache[k];
        let data = &res.data;
        let lhs = hilbert_numerator(&res.hilbert.dims, res.hilbert.tau);
        if lhs != betti(data.d, &data.exponents, &data.relation_degrees) || res.hilbert.tau != data.tau {
            closure_bad.push(lab.name(k).to_string());
        }
        let d = data.d as i64;
        let e: Vec<i64> = data.exponents.iter().map(|&x| x as i64).collect();
        let eps: Vec<i64> =
            data.relation_degrees.iter().enumerate().map(|(j, &ej)| ej as i64 - d - e[j + 2] + 1).collect();
        let sum: i64 = eps.iter().sum();
        let mut ok = eps == data.epsilons && eps.iter().all(|&x| x >= 1) && e[0] + e[1] == d - 1 + sum;
        if data.common_exponent().is_some() {
            let dm = 2 * e[0] - d + 3 - data.m as i64;
            ok &= dm == eps.iter().map(|x| x - 1).sum::<i64>();
        }
        if !ok {
            ident_bad.push(lab.name(k).to_string());
        }
    }
    c.item(closure_bad.is_empty(), format!("(c) closure on {} curves, failures {closure_bad:?}", keys.len()));
    c.item(
        ident_bad.is_empty(),
        format!("(d) degree-sum and delta-m identities on {} curves, failures {ident_bad:?}", keys.len()),
    );
    c.item(certificates_ok.0, format!("(e) {}", certificates_ok.1));
    let mut arrangements: Vec<(String, Vec<Line>)> = Vec::new();
    for d in 4..=8 {
        arrangements.push((format!("nodal d={d}"), nodal_lines(d, 0).unwrap()));
    }
    for k in 2..=6 {
        arrangements.push((format!("thm6.2 k={k}"), thm62_arrangement_lines(k).unwrap()));
    }
    for k in 3..=5 {
        arrangements.push((format!("rk6.3 k={k}"), rk63_lines(k)));
    }
    let mut checked = 0;
    for (name, lines) in arrangements {
        let pts = multiplicities(&lines);
        if pts.values().any(|l| l.len() > 3) {
            continue;
        }
        checked += 1;
        let n2 = pts.values().filter(|l| l.len() == 2).count();
        let n3 = pts.values().filter(|l| l.len() == 3).count();
        let res = lab.of(&product(&lines));
        c.item(n2 + 4 * n3 == res.data.tau, format!("(f) {name}: n2={n2} n3={n3} tau={}", res.data.tau));
    }
    c.item(checked >= 10, format!("(f) {checked} double/triple-only arrangements"));
    c
}

fn c11() -> (Criterion, (bool, String)) {
    let mut c = Criterion::new();
    let req = SearchRequest {
        d: 6,
        r: 4,
        m: 4,
        pool: DEFAULT_POOL.to_vec(),
        templates: Template::shipped(),
        budget: 500,
        seed: 0,
        prime: PrimeField::default_field(),
    };
    let out = search(&req).unwrap();
    let typed = out.certificates.iter().filter(|cert| cert.resolution.exponents == vec![4; 4]).count();
    c.item(
        req.pool.len() == 5 && typed >= 1 && typed == out.certificates.len(),
        format!("{} candidates, {typed} certified of type (6,4,4)", out.candidates),
    );
    let second = PrimeField::new(2_147_483_647).unwrap();
    let mut differ = Vec::new();
    for cert in &out.certificates {
        let f = cert.entry.polynomial().unwrap();
        let opts = ResolveOptions { arithmetic: Arithmetic::Prime(second), ..Default::default() };
        let data = resolve(&f, &opts).unwrap().data;
        let exact = &cert.resolution;
        if !cert.prefilter_agrees
            || (&data.exponents, &data.relation_degrees, data.tau)
                != (&exact.exponents, &exact.relation_degrees, exact.tau)
        {
            differ.push(cert.hash[..12].to_string());
        }
    }
    let ok = out.disagreements.is_empty() && differ.is_empty() && !out.certificates.is_empty();
    let detail = format!(
        "{} certificates: screen disagreements {:?}, mismatches against a second prime {differ:?}",
        out.certificates.len(),
        out.disagreements
    );
    (c, (ok, detail))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut lab = Lab::new();
    let (crit11, certs) = c11();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("1", c1(&mut lab)),
        ("2", c2(&mut lab)),
        ("3", c3(&mut lab)),
        ("4", c4(&mut lab)),
        ("5", c5(&mut lab)),
        ("6", c6(&mut lab)),
        ("7", c7(&lab)),
        ("8", c8(&lab)),
        ("9", c9(&mut lab)),
        ("10", c10(&mut lab, certs)),
        ("11", crit11),
    ];
    let mut unexpected = Vec::new();
    for (name, crit) in &criteria {
        let known = KNOWN_FAILURES.iter().find(|(n, _)| n == name);
        let pass = crit.passed();
        let failed = crit.items.iter().filter(|(ok, _)| !ok).count();
        println!(
            "{} criterion {name}: {} of {} checks pass",
            if pass { "PASS" } else { "FAIL" },
            crit.items.len() - failed,
            crit.items.len()
        );
        for (ok, text) in &crit.items {
            println!("    [{}] {text}", if *ok { "ok" } else { "FAIL" });
        }
        match (pass, known) {
            (false, Some((_, why))) => println!("    known failure: {why}"),
            (false, None) => unexpected.push(format!("criterion {name} failed")),
            (true, Some(_)) => unexpected.push(format!("criterion {name} listed as a known failure but passed")),
            (true, None) => {}
        }
    }
    let passed = criteria.iter().filter(|(_, c)| c.passed()).count();
    let known = criteria.iter().filter(|(n, c)| !c.passed() && KNOWN_FAILURES.iter().any(|(k, _)| k == n)).count();
    println!(
        "acceptance: {passed} of {} criteria pass, {known} known failure(s), {:.1} s",
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcomes {unexpected:?}");
        ExitCode::FAILURE
    }
}
