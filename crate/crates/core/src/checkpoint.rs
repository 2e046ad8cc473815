//! Per-row frontier snapshots.
//!
//! Layout: the magic `DOMCKPT\0`, a little-endian `u32` header length, the
//! JSON header, a `u64` record count, then one record per configuration:
//! `u32` word count, `u64` code, and that many `u64` weight words, all
//! little-endian.

use std::fs;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::engine::Frontier;
use crate::error::{Error, Result};
use crate::graph::Family;

pub const VERSION: u32 = 1;
const MAGIC: &[u8; 8] = b"DOMCKPT\0";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub version: u32,
    pub family: Family,
    pub m: usize,
    pub n: usize,
    pub row: usize,
    pub ring: String,
    pub stride: usize,
}

fn io(e: std::io::Error) -> Error {
    Error::Checkpoint(e.to_string())
}

fn file_name(key: &str, row: usize) -> String {
    format!("{key}.row{row}.ckpt")
}

fn rows_on_disk(dir: &Path, key: &str) -> Result<Vec<(usize, PathBuf)>> {
    let mut out = Vec::new();
    let Ok(entries) = fs::read_dir(dir) else { return Ok(out) };
    let prefix = format!("{key}.row");
    for entry in entries {
        let path = entry.map_err(io)?.path();
        let Some(name) = path.file_name().and_then(|n| n.to_str()) else { continue };
        if let Some(row) = name.strip_prefix(&prefix).and_then(|r| r.strip_suffix(".ckpt")) {
            if let Ok(row) = row.parse() {
                out.push((row, path.clone()));
            }
        }
    }
    out.sort();
    Ok(out)
}

pub(crate) fn save(dir: &Path, key: &str, header: &Header, frontier: &Frontier) -> Result<()> {
    fs::create_dir_all(dir).map_err(io)?;
    let final_path = dir.join(file_name(key, header.row));
    let tmp = final_path.with_extension("tmp");
    {
        let mut w = BufWriter::new(fs::File::create(&tmp).map_err(io)?);
        let json = serde_json::to_vec(header).map_err(|e| Error::Checkpoint(e.to_string()))?;
        w.write_all(MAGIC).map_err(io)?;
        w.write_all(&(json.len() as u32).to_le_bytes()).map_err(io)?;
        w.write_all(&json).map_err(io)?;
        w.write_all(&(frontier.codes.len() as u64).to_le_bytes()).map_err(io)?;
        for (i, code) in frontier.codes.iter().enumerate() {
            w.write_all(&(header.stride as u32).to_le_bytes()).map_err(io)?;
            w.write_all(&code.to_le_bytes()).map_err(io)?;
            for word in &frontier.words[i * header.stride..(i + 1) * header.stride] {
                w.write_all(&word.to_le_bytes()).map_err(io)?;
            }
        }
        w.flush().map_err(io)?;
    }
    fs::rename(&tmp, &final_path).map_err(io)?;
    for (row, path) in rows_on_disk(dir, key)? {
        if row < header.row {
            fs::remove_file(path).map_err(io)?;
        }
    }
    Ok(())
}

fn read_u32(r: &mut impl Read) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b).map_err(io)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64(r: &mut impl Read) -> Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b).map_err(io)?;
    Ok(u64::from_le_bytes(b))
}

pub fn read(path: &Path) -> Result<(Header, Vec<(u64, Vec<u64>)>)> {
    let mut r = BufReader::new(fs::File::open(path).map_err(io)?);
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic).map_err(io)?;
    if &magic != MAGIC {
        return Err(Error::Checkpoint(format!("{} is not a checkpoint file", path.display())));
    }
    let len = read_u32(&mut r)? as usize;
    let mut json = vec![0u8; len];
    r.read_exact(&mut json).map_err(io)?;
    let header: Header = serde_json::from_slice(&json).map_err(|e| Error::Checkpoint(e.to_string()))?;
    if header.version != VERSION {
        return Err(Error::Checkpoint(format!("unsupported checkpoint version {}", header.version)));
    }
    let count = read_u64(&mut r)?;
    let mut records = Vec::with_capacity(count as usize);
    for _ in 0..count {
        let words = read_u32(&mut r)? as usize;
        let code = read_u64(&mut r)?;
        let mut w = Vec::with_capacity(words);
        for _ in 0..words {
            w.push(read_u64(&mut r)?);
        }
        records.push((code, w));
    }
    Ok((header, records))
}

/// The most advanced snapshot for `key` with row at most `max_row`.
pub(crate) fn load_latest(dir: &Path, key: &str, max_row: usize, stride: usize) -> Result<Option<(usize, Frontier)>> {
    let Some((row, path)) = rows_on_disk(dir, key)?.into_iter().filter(|(r, _)| *r <= max_row).last() else {
        return Ok(None);
    };
    let (header, records) = read(&path)?;
    if header.stride != stride || header.row != row {
        return Err(Error::Checkpoint(format!("{} does not match this run", path.display())));
    }
    let mut frontier = Frontier::default();
    let mut last = None;
    for (code, words) in records {
        if words.len() != stride || last.is_some_and(|l| l >= code) {
            return Err(Error::Checkpoint(format!("{} is corrupt", path.display())));
        }
        last = Some(code);
        frontier.codes.push(code);
        frontier.words.extend(words);
    }
    Ok(Some((row, frontier)))
}
