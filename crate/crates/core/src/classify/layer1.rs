//! Layer-1 census: counts of affine-free bent Boolean functions per EA class.
//!
//! Classes are keyed by (algebraic degree, 2-rank of the translation design of
//! the support). The key is an EA invariant; it is complete at n = 4 (one
//! quadratic class) and at n = 6 once the four class representatives are seen
//! to have distinct keys, which `check_key_separates` confirms before use.

use super::enumerate::SearchSpace;
use crate::function::{mobius_u64, table_mask, BooleanFunction};
use crate::{Error, Result, VectorialFunction};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

pub const CHECKPOINT_VERSION: &str = "bentkit-census-1";

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Layer1Key {
    pub degree: u32,
    pub rank: u32,
}

/// f(x + a) on a single-word table.
pub fn translate_word(n: usize, mut t: u64, a: u32) -> u64 {
    const MASKS: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0f0f_0f0f_0f0f_0f0f,
        0x00ff_00ff_00ff_00ff,
        0x0000_ffff_0000_ffff,
        0x0000_0000_ffff_ffff,
    ];
    for (i, &m) in MASKS.iter().enumerate().take(n) {
        if a >> i & 1 == 1 {
            let s = 1 << i;
            t = (t & m) << s | (t >> s) & m;
        }
    }
    t & table_mask(n)
}

fn rank_words(rows: &[u64]) -> u32 {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for &row in rows {
        let mut x = row;
        while x != 0 {
            let b = x.trailing_zeros() as usize;
            if basis[b] == 0 {
                basis[b] = x;
                rank += 1;
                break;
            }
            x ^= basis[b];
        }
    }
    rank
}

/// Key of a single-word table, n <= 6.
pub fn layer1_key_word(n: usize, t: u64) -> Layer1Key {
    let anf = mobius_u64(n, t);
    let mut degree = 0;
    let mut a = anf;
    while a != 0 {
        degree = degree.max((a.trailing_zeros()).count_ones());
        a &= a - 1;
    }
    let rows: Vec<u64> = (0..1u32 << n).map(|g| translate_word(n, t, g)).collect();
    Layer1Key {
        degree,
        rank: rank_words(&rows),
    }
}

pub fn layer1_key(f: &BooleanFunction) -> Result<Layer1Key> {
    let t = f
        .as_u64()
        .ok_or_else(|| Error::invalid("layer-1 keys are defined for n <= 6"))?;
    Ok(layer1_key_word(f.num_vars(), t))
}

/// Confirms that the given class representatives have pairwise distinct keys.
pub fn check_key_separates(reps: &[VectorialFunction]) -> Result<()> {
    let mut keys = Vec::new();
    for r in reps {
        let k = layer1_key(r.coord(0))?;
        if keys.contains(&k) {
            return Err(Error::Inconsistency(format!(
                "layer-1 key {k:?} does not separate the known classes"
            )));
        }
        keys.push(k);
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusClass {
    pub key: Layer1Key,
    /// Number of affine-free members seen so far.
    pub count: u64,
    /// First member in stream order, as a hex truth table.
    pub representative: String,
}

/// Resumable state of a layer-1 census. `cursor` is the next unit to sweep;
/// `tables` is the number of u64 tables already written to the sidecar file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationCheckpoint {
    pub version: String,
    pub n: usize,
    pub cursor: u64,
    pub units: u64,
    pub total: u64,
    pub tables: Option<u64>,
    pub classes: Vec<CensusClass>,
}

impl EnumerationCheckpoint {
    fn fresh(space: &SearchSpace, collect: bool) -> EnumerationCheckpoint {
        EnumerationCheckpoint {
            version: CHECKPOINT_VERSION.into(),
            n: space.n,
            cursor: 0,
            units: space.units(),
            total: 0,
            tables: collect.then_some(0),
            classes: Vec::new(),
        }
    }

    pub fn load(path: &Path) -> Result<EnumerationCheckpoint> {
        let c: EnumerationCheckpoint = serde_json::from_slice(&std::fs::read(path)?)?;
        if c.version != CHECKPOINT_VERSION {
            return Err(Error::parse(format!(
                "checkpoint version {} is not {CHECKPOINT_VERSION}",
                c.version
            )));
        }
        Ok(c)
    }

    /// Writes atomically through a temporary file.
    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_vec_pretty(self)?)?;
        std::fs::rename(tmp, path)?;
        Ok(())
    }

    fn absorb(&mut self, n: usize, tables: &[u64]) {
        for &t in tables {
            let key = layer1_key_word(n, t);
            match self.classes.iter_mut().find(|c| c.key == key) {
                Some(c) => c.count += 1,
                None => self.classes.push(CensusClass {
                    key,
                    count: 1,
                    representative: format!("{t:016x}"),
                }),
            }
        }
        self.total += tables.len() as u64;
    }
}

fn sidecar(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".tables");
    PathBuf::from(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusProgress {
    pub event: &'static str,
    pub n: usize,
    pub cursor: u64,
    pub units: u64,
    pub total: u64,
}

pub struct CensusOptions<'a> {
    /// Checkpoint file; resumed from when it exists.
    pub checkpoint: Option<PathBuf>,
    /// Keep every table (needed for friend searches).
    pub collect: bool,
    /// Work units per batch between checkpoints.
    pub batch: u64,
    /// Stop after this many batches (the checkpoint stays resumable).
    pub max_batches: Option<u64>,
    pub progress: Option<&'a mut dyn FnMut(&CensusProgress)>,
}

impl Default for CensusOptions<'_> {
    fn default() -> Self {
        CensusOptions {
            checkpoint: None,
            collect: false,
            batch: 4096,
            max_batches: None,
            progress: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Census {
    pub state: EnumerationCheckpoint,
    pub tables: Option<Vec<u64>>,
}

impl Census {
    pub fn is_complete(&self) -> bool {
        self.state.cursor == self.state.units
    }

    pub fn representative(&self, class: usize) -> BooleanFunction {
        let t = u64::from_str_radix(&self.state.classes[class].representative, 16)
            .expect("representatives are written as hex");
        BooleanFunction::from_u64(self.state.n, t).expect("table fits n variables")
    }
}

fn read_tables(path: &Path, len: u64) -> Result<Vec<u64>> {
    let bytes = std::fs::read(path)?;
    if (bytes.len() as u64) < len * 8 {
        return Err(Error::parse(format!(
            "table file {} is shorter than its checkpoint records",
            path.display()
        )));
    }
    Ok(bytes[..len as usize * 8]
        .chunks_exact(8)
        .map(|c| u64::from_le_bytes(c.try_into().expect("chunk of 8 bytes")))
        .collect())
}

fn append_tables(path: &Path, expected_len: u64, tables: &[u64]) -> Result<()> {
    use std::io::Write;
    let file = std::fs::OpenOptions::new()
        .create(true)
        .write(true)
        .truncate(false)
        .open(path)?;
    // Drop anything written after the last checkpoint.
    file.set_len(expected_len * 8)?;
    let mut w = std::io::BufWriter::new(file);
    std::io::Seek::seek(&mut w, std::io::SeekFrom::End(0))?;
    for &t in tables {
        w.write_all(&t.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

/// Enumerates the affine-free bent functions of n variables and tallies them
/// by layer-1 key, with optional checkpoint/resume.
pub fn census(n: usize, mut opts: CensusOptions) -> Result<Census> {
    let space = SearchSpace::new(n)?;
    let mut state = match &opts.checkpoint {
        Some(p) if p.exists() => {
            let c = EnumerationCheckpoint::load(p)?;
            if c.n != n || c.units != space.units() || c.tables.is_some() != opts.collect {
                return Err(Error::invalid(format!(
                    "checkpoint {} does not match this run",
                    p.display()
                )));
            }
            c
        }
        _ => EnumerationCheckpoint::fresh(&space, opts.collect),
    };
    let side = opts.checkpoint.as_deref().map(sidecar);
    let mut tables: Option<Vec<u64>> = match (&side, state.tables) {
        (Some(s), Some(len)) if len > 0 => Some(read_tables(s, len)?),
        (_, Some(_)) => Some(Vec::new()),
        _ => opts.collect.then(Vec::new),
    };
    let batch = opts.batch.max(1);
    let mut batches = 0;
    while state.cursor < state.units {
        if opts.max_batches.is_some_and(|m| batches >= m) {
            break;
        }
        let end = (state.cursor + batch).min(state.units);
        let found = space.sweep_range(state.cursor..end);
        state.absorb(n, &found);
        if let Some(p) = &opts.checkpoint {
            if let (Some(s), Some(len)) = (&side, state.tables) {
                append_tables(s, len, &found)?;
            }
            state.cursor = end;
            if let Some(len) = state.tables.as_mut() {
                *len += found.len() as u64;
            }
            state.save(p)?;
        } else {
            state.cursor = end;
            if let Some(len) = state.tables.as_mut() {
                *len += found.len() as u64;
            }
        }
        if let Some(t) = tables.as_mut() {
            t.extend_from_slice(&found);
        }
        batches += 1;
        if let Some(cb) = opts.progress.as_mut() {
            cb(&CensusProgress {
                event: "census",
                n,
                cursor: state.cursor,
                units: state.units,
                total: state.total,
            });
        }
    }
    Ok(Census { state, tables })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::dev_support;
    use crate::Anf;

    #[test]
    fn translate_word_matches_generic() {
        let f = Anf::parse(6, "x1*x2*x3 + x2*x5 + x4*x6")
            .unwrap()
            .to_table();
        for a in 0..64 {
            assert_eq!(
                translate_word(6, f.as_u64().unwrap(), a),
                f.translate(a).as_u64().unwrap()
            );
        }
    }

    #[test]
    fn key_rank_matches_design_rank() {
        for s in ["x1*x2 + x3*x4 + x5*x6", "x1*x2*x3 + x1*x4 + x2*x5 + x3*x6"] {
            let f = Anf::parse(6, s).unwrap().to_table();
            let k = layer1_key(&f).unwrap();
            assert_eq!(k.rank as usize, dev_support(&f).matrix().rank_gf2());
            assert_eq!(k.degree, Anf::from_table(&f).degree());
        }
    }

    #[test]
    fn n4_census_is_one_class() {
        let c = census(4, CensusOptions::default()).unwrap();
        assert!(c.is_complete());
        assert_eq!(c.state.total, 28);
        assert_eq!(c.state.classes.len(), 1);
        assert_eq!(c.state.classes[0].key.degree, 2);
    }

    #[test]
    fn resume_gives_identical_counts() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("n6.json");
        let run = || {
            census(
                6,
                CensusOptions {
                    checkpoint: Some(p.clone()),
                    collect: true,
                    batch: 2,
                    max_batches: Some(1),
                    ..Default::default()
                },
            )
            .unwrap()
        };
        let first = run();
        assert_eq!(first.state.cursor, 2);
        let second = run();
        assert_eq!(second.state.cursor, 4);
        let space = SearchSpace::new(6).unwrap();
        let direct = space.sweep_range(0..4);
        assert_eq!(second.tables.as_deref(), Some(&direct[..]));
        let mut fresh = EnumerationCheckpoint::fresh(&space, true);
        fresh.absorb(6, &direct);
        assert_eq!(second.state.classes, fresh.classes);
        assert_eq!(second.state.total, direct.len() as u64);
        assert_eq!(second.state, EnumerationCheckpoint::load(&p).unwrap());
    }

    #[test]
    fn mismatched_checkpoint_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.json");
        census(
            4,
            CensusOptions {
                checkpoint: Some(p.clone()),
                ..Default::default()
            },
        )
        .unwrap();
        let err = census(
            2,
            CensusOptions {
                checkpoint: Some(p),
                ..Default::default()
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }
}
