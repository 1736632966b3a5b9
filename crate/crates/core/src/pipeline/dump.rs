//! Plain-text design dump, sufficient to rebuild Φ bit-exactly.
//!
//! ```text
//! coded-cs-design v1 n=7 m=6 k=1 p=2
//! s = 3
//! ...
//! ```

use std::collections::HashMap;

use super::design::{rs_for, SensingDesign};
use crate::error::{Error, Result};
use crate::lattice::ModulationSpec;
use crate::polar_code::{ChannelCode, LinearCode, PolarCode};

pub const DUMP_VERSION: &str = "coded-cs-design v1";

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

impl SensingDesign {
    pub fn dump(&self) -> String {
        let mut out = format!("{DUMP_VERSION} n={} m={} k={} p={}\n", self.n(), self.m(), self.k_max, self.p());
        let mut kv = |k: &str, v: String| out.push_str(&format!("{k} = {v}\n"));
        kv("s", self.s().to_string());
        kv("m_tilde1", self.m_tilde1().to_string());
        kv("m1", self.m1().to_string());
        kv("modulus", join(self.field.modulus()));
        kv("alpha", self.field.alpha().packed().to_string());
        // {:?} prints the shortest string that parses back to the same bits.
        kv("tau", format!("{:?}", self.modulation.tau()));
        kv("generator_seed", self.generator_seed.to_string());
        match &self.code {
            ChannelCode::Polar(c) => {
                kv("code", "polar".into());
                kv("mother_length", c.mother_len().to_string());
                kv("design_crossover", format!("{:?}", c.design_crossover()));
                kv("frozen", join(c.frozen_set()));
                kv("shortened", join(c.shortened_set()));
            }
            ChannelCode::Linear(c) => {
                kv("code", "linear".into());
                for (i, row) in c.generator().iter().enumerate() {
                    kv(&format!("generator.{i}"), join(row));
                }
            }
        }
        out
    }

    pub fn from_dump(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| parse_err("empty dump"))?;
        let rest =
            header.strip_prefix(DUMP_VERSION).ok_or_else(|| parse_err(&format!("expected header '{DUMP_VERSION}'")))?;
        let mut head = HashMap::new();
        for tok in rest.split_whitespace() {
            let (k, v) = tok.split_once('=').ok_or_else(|| parse_err(&format!("bad header token '{tok}'")))?;
            head.insert(k, v);
        }
        let mut kv = HashMap::new();
        for line in lines.map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let (k, v) = line.split_once('=').ok_or_else(|| parse_err(&format!("bad line '{line}'")))?;
            kv.insert(k.trim(), v.trim());
        }

        let n: usize = parse(&head, "n")?;
        let m: usize = parse(&head, "m")?;
        let k_max: usize = parse(&head, "k")?;
        let p: u32 = parse(&head, "p")?;
        let modulus: Vec<u32> = parse_list(&kv, "modulus")?;
        let (field, rs) = rs_for(n, k_max, p, Some(&modulus))?;
        if field.alpha().packed() != parse::<u32>(&kv, "alpha")? {
            return Err(parse_err("alpha does not match the modulus"));
        }
        for (key, want) in [
            ("s", field.degree() as usize),
            ("m_tilde1", rs.m_tilde1()),
            ("m1", rs.m_tilde1() * field.degree() as usize),
        ] {
            if parse::<usize>(&kv, key)? != want {
                return Err(parse_err(&format!("{key} inconsistent with n, k, p")));
            }
        }
        let modulation = ModulationSpec::with_tau(p, parse(&kv, "tau")?)?;
        let generator_seed: u64 = parse(&kv, "generator_seed")?;
        let code = match *kv.get("code").ok_or_else(|| parse_err("missing key 'code'"))? {
            "polar" => {
                let mother: usize = parse(&kv, "mother_length")?;
                let frozen: Vec<usize> = parse_list(&kv, "frozen")?;
                let shortened: Vec<usize> = parse_list(&kv, "shortened")?;
                let code = PolarCode::from_frozen(mother, m, &frozen, parse(&kv, "design_crossover")?)?;
                if code.shortened_set() != shortened {
                    return Err(parse_err("shortened set inconsistent with m"));
                }
                ChannelCode::Polar(code)
            }
            "linear" => {
                let m1 = rs.m_tilde1() * field.degree() as usize;
                let rows =
                    (0..m1).map(|i| parse_list::<u32>(&kv, &format!("generator.{i}"))).collect::<Result<Vec<_>>>()?;
                ChannelCode::Linear(LinearCode::from_generator(p, rows)?)
            }
            other => return Err(parse_err(&format!("unknown code type '{other}'"))),
        };
        if code.block_len() != m {
            return Err(parse_err("code length does not match m"));
        }
        Self::assemble(field, rs, code, modulation, k_max, generator_seed)
    }
}

fn parse_err(msg: &str) -> Error {
    Error::Parse(msg.to_string())
}

fn parse<T: std::str::FromStr>(map: &HashMap<&str, &str>, key: &str) -> Result<T> {
    let raw = map.get(key).ok_or_else(|| parse_err(&format!("missing key '{key}'")))?;
    raw.parse().map_err(|_| parse_err(&format!("bad value for '{key}': '{raw}'")))
}

fn parse_list<T: std::str::FromStr>(map: &HashMap<&str, &str>, key: &str) -> Result<Vec<T>> {
    let raw = map.get(key).ok_or_else(|| parse_err(&format!("missing key '{key}'")))?;
    raw.split_whitespace().map(|t| t.parse().map_err(|_| parse_err(&format!("bad entry '{t}' in '{key}'")))).collect()
}
