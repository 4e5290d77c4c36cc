//! AES-CMAC per the standard construction: subkeys K1/K2 derived by
//! doubling in GF(2^128), CBC chaining, last-block masking.

use super::aes::{self, Block, Key, RoundKeys, BLOCK_LEN};

/// Double a 128-bit value in GF(2^128) (left shift, conditional xor 0x87).
fn dbl(block: &Block) -> Block {
    let mut out = [0u8; 16];
    let mut carry = 0u8;
    for i in (0..16).rev() {
        out[i] = (block[i] << 1) | carry;
        carry = block[i] >> 7;
    }
    if carry != 0 {
        out[15] ^= 0x87;
    }
    out
}

fn xor_block(a: &Block, b: &Block) -> Block {
    let mut out = [0u8; 16];
    for i in 0..16 {
        out[i] = a[i] ^ b[i];
    }
    out
}

/// CMAC with a pre-expanded key schedule.
pub fn cmac_keys(keys: &RoundKeys, data: &[u8]) -> Block {
    let l = aes::encrypt_block_keys(keys, &[0u8; 16]);
    let k1 = dbl(&l);
    let k2 = dbl(&k1);

    let n = data.len().div_ceil(BLOCK_LEN).max(1);
    let complete_last = !data.is_empty() && data.len() % BLOCK_LEN == 0;

    let mut x = [0u8; 16];
    for i in 0..n - 1 {
        let mut m = [0u8; 16];
        m.copy_from_slice(&data[i * BLOCK_LEN..(i + 1) * BLOCK_LEN]);
        x = aes::encrypt_block_keys(keys, &xor_block(&x, &m));
    }

    let last = if complete_last {
        let mut m = [0u8; 16];
        m.copy_from_slice(&data[(n - 1) * BLOCK_LEN..]);
        xor_block(&m, &k1)
    } else {
        let rest = &data[(n - 1) * BLOCK_LEN..];
        let mut m = [0u8; 16];
        m[..rest.len()].copy_from_slice(rest);
        m[rest.len()] = 0x80;
        xor_block(&m, &k2)
    };
    aes::encrypt_block_keys(keys, &xor_block(&x, &last))
}

/// AES-CMAC of `data` under `key`, returning the full 16-byte tag.
pub fn cmac(key: &Key, data: &[u8]) -> Block {
    cmac_keys(&aes::expand_key(key), data)
}

/// Tag comparison that always inspects every byte.
pub fn tags_equal(a: &Block, b: &Block) -> bool {
    let mut diff = 0u8;
    for i in 0..16 {
        diff |= a[i] ^ b[i];
    }
    diff == 0
}
