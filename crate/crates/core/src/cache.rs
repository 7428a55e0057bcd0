//! Content-addressed on-disk cache for module Gröbner bases and free
//! resolutions.
//!
//! Keys hash the ring (variables, characteristic, order, grading, relation
//! basis), the presentation, the operation and the tool version. Entries
//! are write-once files named by the hash; writers go through a temporary
//! file and an atomic rename, so concurrent readers never see partial
//! entries. Every payload is revalidated on load and a failed check counts
//! as a miss.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graded::Elem;
use crate::groebner::engine::{self, Ctx, ModuleOrder, MVec};
use crate::homological::{Certificate, Resolution};
use crate::module::GradedModule;
use crate::monomial::Degree;
use crate::ring::Ring;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const ENV_VAR: &str = "CMPAIRS_CACHE";
pub const DEFAULT_DIR: &str = ".cmpairs-cache";

pub struct Cache {
    dir: PathBuf,
    hits: AtomicUsize,
    misses: AtomicUsize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub hits: usize,
    pub misses: usize,
}

#[derive(Serialize, Deserialize)]
struct Entry<T> {
    version: String,
    operation: String,
    key: String,
    payload: T,
}

#[derive(Serialize, Deserialize)]
struct ResolutionPayload {
    shifts: Vec<Vec<Degree>>,
    maps: Vec<Vec<Elem>>,
    cap: usize,
    complete: bool,
    periodicity: Option<Certificate>,
    tail: Option<Certificate>,
}

#[derive(Serialize, Deserialize)]
struct GbPayload {
    order: ModuleOrder,
    basis: Vec<MVec>,
}

#[derive(Serialize)]
struct KeyMaterial<'a> {
    version: &'a str,
    operation: &'a str,
    names: &'a [String],
    characteristic: u32,
    order: &'a crate::monomial::MonomialOrder,
    grading: &'a crate::ring::Grading,
    relation_gb: &'a [crate::poly::Poly],
    shifts: &'a [Degree],
    relations: &'a [Elem],
    parameter: usize,
}

fn key(ring: &Ring, m: &GradedModule, operation: &str, parameter: usize) -> String {
    let material = KeyMaterial {
        version: TOOL_VERSION,
        operation,
        names: &ring.poly.names,
        characteristic: ring.poly.field.characteristic(),
        order: &ring.poly.order,
        grading: &ring.grading,
        relation_gb: &ring.relation_gb,
        shifts: &m.shifts,
        relations: &m.relations,
        parameter,
    };
    let bytes = serde_json::to_vec(&material).expect("key material serializes");
    hex::encode(Sha256::digest(&bytes))
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Cache> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
        Ok(Cache { dir, hits: AtomicUsize::new(0), misses: AtomicUsize::new(0) })
    }

    /// `$CMPAIRS_CACHE`, falling back to `.cmpairs-cache/` in the working
    /// directory.
    pub fn from_env() -> Result<Cache> {
        let dir = std::env::var_os(ENV_VAR).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_DIR));
        Cache::open(dir)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats { hits: self.hits.load(Ordering::Relaxed), misses: self.misses.load(Ordering::Relaxed) }
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    fn read<T: for<'de> Deserialize<'de>>(&self, key: &str, operation: &str) -> Option<T> {
        let bytes = fs::read(self.path(key)).ok()?;
        let entry: Entry<T> = serde_json::from_slice(&bytes).ok()?;
        (entry.version == TOOL_VERSION && entry.operation == operation && entry.key == key).then_some(entry.payload)
    }

    fn write<T: Serialize>(&self, key: &str, operation: &str, payload: T) {
        let entry = Entry { version: TOOL_VERSION.to_string(), operation: operation.to_string(), key: key.to_string(), payload };
        let Ok(bytes) = serde_json::to_vec(&entry) else { return };
        let tmp = self.dir.join(format!(".{key}.{}.{:?}.tmp", std::process::id(), std::thread::current().id()));
        // A failed write only costs a later recomputation.
        if fs::write(&tmp, &bytes).is_ok() && fs::rename(&tmp, self.path(key)).is_err() {
            let _ = fs::remove_file(&tmp);
        }
    }

    /// A resolution of `m` computed by `compute`, or the cached one for the
    /// same presentation, operation and cap.
    pub fn resolution(
        &self,
        m: &GradedModule,
        operation: &str,
        cap: usize,
        compute: impl FnOnce() -> Resolution,
    ) -> Resolution {
        let op = format!("resolution/{operation}");
        let k = key(&m.ring, m, &op, cap);
        if let Some(p) = self.read::<ResolutionPayload>(&k, &op) {
            let start = Resolution::start(m);
            let res = Resolution {
                module: start.module,
                shifts: p.shifts,
                maps: p.maps,
                cap: p.cap,
                complete: p.complete,
                periodicity: p.periodicity,
                tail: p.tail,
            };
            if resolution_plausible(&res) {
                self.hits.fetch_add(1, Ordering::Relaxed);
                return res;
            }
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let res = compute();
        let payload = ResolutionPayload {
            shifts: res.shifts.clone(),
            maps: res.maps.clone(),
            cap: res.cap,
            complete: res.complete,
            periodicity: res.periodicity.clone(),
            tail: res.tail.clone(),
        };
        self.write(&k, &op, payload);
        res
    }

    /// The lifted module Gröbner basis of `m`, revalidated with the
    /// Buchberger criterion on load.
    pub fn lifted_gb(&self, m: &GradedModule) -> (ModuleOrder, Vec<MVec>) {
        let op = "lifted_gb";
        let k = key(&m.ring, m, op, 0);
        if let Some(p) = self.read::<GbPayload>(&k, op) {
            let ctx = Ctx::new(&m.ring.poly, &p.order);
            if engine::is_groebner(&ctx, &p.basis) && p.order.shifts.len() == m.shifts.len() {
                self.hits.fetch_add(1, Ordering::Relaxed);
                return (p.order, p.basis);
            }
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let (order, basis) = m.lifted_gb();
        self.write(&k, op, GbPayload { order: order.clone(), basis: basis.clone() });
        (order, basis)
    }
}

/// Shapes match, the first map presents the module and `d ∘ d = 0`.
fn resolution_plausible(res: &Resolution) -> bool {
    let shapes = res.shifts.len() == res.maps.len() + 1
        && res.maps.iter().enumerate().all(|(k, m)| m.len() == res.shifts[k + 1].len());
    shapes
        && res.shifts[0] == res.module.shifts
        && res.maps.first().map_or(res.module.relations.is_empty() || !res.complete, |m0| m0 == &res.module.relations)
        && res.is_complex()
}

static ACTIVE: RwLock<Option<Arc<Cache>>> = RwLock::new(None);

/// Makes `cache` the process-wide cache consulted by the resolution and
/// Gröbner routines; `None` turns caching off.
pub fn install(cache: Option<Arc<Cache>>) {
    *ACTIVE.write().unwrap() = cache;
}

pub fn active() -> Option<Arc<Cache>> {
    ACTIVE.read().unwrap().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homological::free_resolution;
    use crate::monomial::OrderKind;
    use crate::ring::Grading;

    #[test]
    fn round_trip_and_revalidation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let r = Ring::from_text(&["x", "y"], &["x*y"], Grading::Fine, OrderKind::Grevlex).unwrap();
        let m = GradedModule::cyclic(&r, &[r.parse("x").unwrap()]).unwrap();
        let cold = cache.resolution(&m, "plain", 5, || free_resolution(&m, 5));
        let warm = cache.resolution(&m, "plain", 5, || panic!("should hit"));
        assert_eq!(cold.maps, warm.maps);
        assert_eq!(cold.periodicity, warm.periodicity);
        assert_eq!(cache.stats(), CacheStats { hits: 1, misses: 1 });

        let gb = cache.lifted_gb(&m);
        assert_eq!(cache.lifted_gb(&m), gb);
        assert_eq!(cache.stats().hits, 2);

        // A tampered entry fails revalidation and is recomputed.
        for e in fs::read_dir(dir.path()).unwrap() {
            let p = e.unwrap().path();
            let mut v: serde_json::Value = serde_json::from_slice(&fs::read(&p).unwrap()).unwrap();
            if v["operation"] == "resolution/plain" {
                v["payload"]["maps"][0] = serde_json::json!([]);
                fs::write(&p, serde_json::to_vec(&v).unwrap()).unwrap();
            }
        }
        let again = cache.resolution(&m, "plain", 5, || free_resolution(&m, 5));
        assert_eq!(again.maps, cold.maps);
        assert_eq!(cache.stats().misses, 3);
    }
}
