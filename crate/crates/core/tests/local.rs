use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::net::TcpListener;
use std::path::{Path, PathBuf};
use std::thread;
use std::time::Duration;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use qpl::local::field::format_local_fields;
use qpl::local::{
    algebra_aut_order, beta_infinity, beta_p, etale_quintics, fetch_local_fields, fixture_path,
    load_local_fields, parse_local_fields, real_quintics, tame_local_fields, FetchConfig, LocalError,
    LocalFieldRec,
};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/localfields")
}

fn fixture(p: u64) -> Vec<LocalFieldRec> {
    load_local_fields(&fixture_path(&fixtures(), p)).unwrap().records
}

fn closed_form(p: u64) -> BigRational {
    let x = BigRational::new(1.into(), BigInt::from(p));
    BigRational::one() + x.pow(2) - x.pow(4) - x.pow(5)
}

fn rec(p: u64, n: u32, e: u32, f: u32, c: u32, aut: u32) -> LocalFieldRec {
    LocalFieldRec { p, n, e, f, c, aut }
}

/// Totally ramified fields of degree n satisfy sum 1/|Aut| p^-(c-n+1) = 1.
fn totally_ramified_mass(fields: &[LocalFieldRec], p: u64, n: u32) -> BigRational {
    fields
        .iter()
        .filter(|r| r.n == n && r.f == 1)
        .map(|r| {
            let shift = r.c as i32 - n as i32 + 1;
            BigRational::new(1.into(), r.aut.into()) / BigRational::from_integer(BigInt::from(p)).pow(shift)
        })
        .sum()
}

fn signature(fields: &[LocalFieldRec]) -> Vec<(u32, u32, u32, u32, u32)> {
    let mut v: Vec<_> = fields.iter().map(|r| (r.n, r.e, r.f, r.c, r.aut)).collect();
    v.sort_unstable();
    v
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[test]
fn fixtures_load_cleanly_and_match_the_closed_form() {
    for p in [2u64, 3, 5, 7, 11, 13] {
        let fields = fixture(p);
        assert!(!fields.is_empty());
        assert!(fields.iter().all(|r| r.check().is_ok()));
        let rep = beta_p(p, &fields).unwrap();
        assert_eq!(rep.total, closed_form(p), "p = {p}");
        assert!(rep.matches);
        let sum: BigRational = rep.terms.iter().map(|t| t.mass.clone()).sum::<BigRational>() * &rep.prefactor;
        assert_eq!(sum, rep.total);
    }
    assert_eq!(beta_p(2, &fixture(2)).unwrap().total, BigRational::new(37.into(), 32.into()));
}

#[test]
fn serre_mass_holds_for_every_table() {
    for p in [2u64, 3, 5, 7, 11, 13] {
        for n in 1..=5 {
            assert_eq!(totally_ramified_mass(&fixture(p), p, n), BigRational::one(), "fixture p = {p}, n = {n}");
        }
    }
    for p in [7u64, 11, 13, 17, 19, 23, 31] {
        for n in 1..=5 {
            let tame = tame_local_fields(p).unwrap();
            assert_eq!(totally_ramified_mass(&tame, p, n), BigRational::one(), "tame p = {p}, n = {n}");
        }
    }
}

#[test]
fn tame_enumeration_agrees_with_fixtures() {
    for p in [7u64, 11, 13] {
        assert_eq!(signature(&tame_local_fields(p).unwrap()), signature(&fixture(p)), "p = {p}");
    }
    let seven = tame_local_fields(7).unwrap();
    let unramified: Vec<_> = seven.iter().filter(|r| r.e == 1 && r.f == 5).collect();
    assert_eq!(unramified.len(), 1);
    assert_eq!(unramified[0].aut, 5);
    assert_eq!(tame_local_fields(5), Err(LocalError::WildPrime(5)));
}

#[test]
fn tame_masses_for_larger_primes() {
    for p in [7u64, 11, 13, 17, 19, 23, 29, 31, 101] {
        let rep = beta_p(p, &tame_local_fields(p).unwrap()).unwrap();
        assert_eq!(rep.total, closed_form(p), "p = {p}");
    }
}

#[test]
fn algebra_counts_match_a_partition_recount() {
    for p in [2u64, 7] {
        let fields = fixture(p);
        let mut per_degree: BTreeMap<u32, u64> = BTreeMap::new();
        for r in &fields {
            *per_degree.entry(r.n).or_default() += 1;
        }
        let expected: u64 = partitions(5, 5)
            .iter()
            .map(|parts| {
                let mut mult: BTreeMap<u32, u64> = BTreeMap::new();
                for &d in parts {
                    *mult.entry(d).or_default() += 1;
                }
                mult.iter()
                    .map(|(d, &m)| binomial(per_degree.get(d).copied().unwrap_or(0) + m - 1, m))
                    .product::<u64>()
            })
            .sum();
        let algebras = etale_quintics(&fields).unwrap();
        assert_eq!(algebras.len() as u64, expected, "p = {p}");
        assert!(algebras.iter().all(|a| a.degree() == 5));
    }
}

#[test]
fn automorphism_orders() {
    let real: Vec<BigInt> = real_quintics().iter().map(algebra_aut_order).collect();
    assert_eq!(real, [120, 12, 8].map(BigInt::from));
    assert_eq!(beta_infinity(), BigRational::new(13.into(), 120.into()));

    let fields = vec![rec(7, 1, 1, 1, 0, 1), rec(7, 2, 1, 2, 0, 2), rec(7, 5, 1, 5, 0, 5)];
    for alg in etale_quintics(&fields).unwrap() {
        let mut groups: BTreeMap<String, (u32, u64)> = BTreeMap::new();
        for comp in &alg.components {
            groups.entry(comp.to_string()).or_insert((comp.aut(), 0)).1 += 1;
        }
        let expected: BigInt = groups
            .values()
            .map(|&(aut, m)| BigInt::from(aut).pow(m as u32) * (1..=m).product::<u64>())
            .product();
        assert_eq!(algebra_aut_order(&alg), expected, "{alg}");
    }
    let only_linear = etale_quintics(&[rec(7, 1, 1, 1, 0, 1)]).unwrap();
    assert_eq!(only_linear.len(), 1);
    assert_eq!(algebra_aut_order(&only_linear[0]), BigInt::from(120));
}

#[test]
fn table_errors() {
    assert!(parse_local_fields("").unwrap().is_empty());
    assert!(matches!(
        parse_local_fields("7 4 2 1 3 2\n"),
        Err(LocalError::InvariantViolation { index: 0, .. })
    ));
    assert!(matches!(parse_local_fields("7 4 x 1 3 2\n"), Err(LocalError::ParseError { line: 1, .. })));
    let partial: Vec<LocalFieldRec> = fixture(7).into_iter().filter(|r| r.n != 4).collect();
    assert_eq!(beta_p(7, &partial), Err(LocalError::IncompleteTable { p: 7, degree: 4 }));
    let round = parse_local_fields(&format_local_fields(&fixture(3))).unwrap().records;
    assert_eq!(round, fixture(3));
}

fn serve(responses: Vec<(Option<&'static str>, String)>) -> String {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    thread::spawn(move || {
        for (version, body) in responses {
            let (mut stream, _) = listener.accept().unwrap();
            let mut buf = Vec::new();
            let mut chunk = [0u8; 1024];
            while !buf.windows(4).any(|w| w == b"\r\n\r\n") {
                let n = stream.read(&mut chunk).unwrap();
                if n == 0 {
                    break;
                }
                buf.extend_from_slice(&chunk[..n]);
            }
            let header = version.map_or(String::new(), |v| format!("X-Source-Version: {v}\r\n"));
            let reply = format!(
                "HTTP/1.1 200 OK\r\nContent-Length: {}\r\n{}Connection: close\r\n\r\n{}",
                body.len(),
                header,
                body
            );
            stream.write_all(reply.as_bytes()).unwrap();
        }
    });
    format!("http://{addr}/fields")
}

#[test]
fn fetch_caches_by_source_version() {
    let dir = tempfile::tempdir().unwrap();
    let body = format_local_fields(&tame_local_fields(17).unwrap());
    let endpoint = serve(vec![(Some("2024.1"), body.clone())]);
    let cfg = FetchConfig::new(endpoint, dir.path());
    let path = fetch_local_fields(&cfg, 17, 5).unwrap();
    assert_eq!(path.file_name().unwrap(), "p17_n5_2024.1.tbl");
    assert_eq!(std::fs::read_to_string(&path).unwrap(), body);
    let rep = beta_p(17, &load_local_fields(&path).unwrap().records).unwrap();
    assert!(rep.matches);

    // the server is gone; the second call must be served from the cache
    let again = fetch_local_fields(&cfg, 17, 5).unwrap();
    assert_eq!(again, path);
}

#[test]
fn fetch_reads_the_version_from_the_body() {
    let dir = tempfile::tempdir().unwrap();
    let body = format!("# source-version: r7\n{}", format_local_fields(&tame_local_fields(19).unwrap()));
    let cfg = FetchConfig::new(serve(vec![(None, body)]), dir.path());
    let path = fetch_local_fields(&cfg, 19, 5).unwrap();
    assert_eq!(path.file_name().unwrap(), "p19_n5_r7.tbl");
}

#[test]
fn fetch_failures() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = FetchConfig::new("http://127.0.0.1:9/fields", dir.path());
    cfg.timeout = Duration::from_secs(2);
    assert!(matches!(fetch_local_fields(&cfg, 23, 5), Err(LocalError::NetworkError(_))));

    let cfg = FetchConfig::new(serve(vec![(Some("v1"), "<html>not a table</html>".into())]), dir.path());
    assert!(matches!(fetch_local_fields(&cfg, 23, 5), Err(LocalError::SchemaMismatch(_))));

    let wrong_prime = format_local_fields(&tame_local_fields(29).unwrap());
    let cfg = FetchConfig::new(serve(vec![(Some("v1"), wrong_prime)]), dir.path());
    assert!(matches!(fetch_local_fields(&cfg, 23, 5), Err(LocalError::SchemaMismatch(_))));

    let cfg = FetchConfig::new(serve(vec![(Some("v1"), String::new())]), dir.path());
    assert!(matches!(fetch_local_fields(&cfg, 23, 5), Err(LocalError::SchemaMismatch(_))));
    assert!(std::fs::read_dir(dir.path()).unwrap().all(|e| {
        !e.unwrap().file_name().to_string_lossy().ends_with(".tbl")
    }));
}
