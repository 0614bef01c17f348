"""
Merkle-Hellman knapsack cryptosystem.

The private key is a superincreasing sequence disguised by modular
multiplication; the public key is the disguised sequence. Encryption is a
subset sum over the public weights, decryption undoes the multiplication and
solves the easy knapsack greedily.
"""

import math
import random
from typing import Sequence

import numpy as np

from knapsackga.core.exceptions import DimensionError, MalformedCiphertextError
from knapsackga.core.logging import logger
from knapsackga.core.models import Ciphertext, PrivateKey, PublicKey
from knapsackga.core.types import Chromosome


def generate_keypair(
    n: int, seed: int, magnitude: int = 10
) -> tuple[PrivateKey, PublicKey]:
    """
    Builds a keypair from a seed.

    Each element of the superincreasing sequence is the running sum plus a
    uniform draw from [1, 2^magnitude]; the modulus exceeds the total the same
    way. Multipliers are drawn until one is coprime to the modulus.

    Args:
        n: Block size in bits
        seed: RNG seed, identical seeds give identical keys
        magnitude: Bit width of the random increments

    Returns:
        tuple[PrivateKey, PublicKey]
    """
    if n < 1:
        raise ValueError(f"Block size must be at least 1, got {n}")
    if magnitude < 1:
        raise ValueError(f"Key magnitude must be at least 1, got {magnitude}")

    rng = random.Random(seed)
    bound = 1 << magnitude

    sequence: list[int] = []
    running = 0
    for _ in range(n):
        element = running + rng.randint(1, bound)
        sequence.append(element)
        running += element

    modulus = running + rng.randint(1, bound)
    # 1 < w < q needs q >= 3
    if modulus < 3:
        modulus = 3

    while True:
        multiplier = rng.randint(2, modulus - 1)
        if math.gcd(multiplier, modulus) == 1:
            break

    private = PrivateKey(
        superincreasing=tuple(sequence), modulus=modulus, multiplier=multiplier
    )
    public = private.public_key()
    logger.debug(
        f"Generated {n}-bit keypair (seed={seed}, magnitude={magnitude}), "
        f"public fingerprint {public.fingerprint}"
    )
    return private, public


def encrypt_block(bits: Sequence[int], key: PublicKey) -> int:
    if len(bits) != key.n:
        raise DimensionError(key.n, len(bits), what="plaintext block")
    return sum(a for a, bit in zip(key.weights, bits) if bit)


def decrypt_block(value: int, key: PrivateKey) -> Chromosome:
    """
    Inverts one ciphertext block through the trapdoor.

    Raises:
        MalformedCiphertextError: If the value is not a subset sum of the key
    """
    residue = (value * key.inverse) % key.modulus

    bits = [0] * key.n
    remaining = residue
    for i in range(key.n - 1, -1, -1):
        if remaining >= key.superincreasing[i]:
            bits[i] = 1
            remaining -= key.superincreasing[i]

    if remaining != 0:
        raise MalformedCiphertextError(value, remaining)
    return tuple(bits)


def encode_message(text: bytes, n: int) -> list[Chromosome]:
    """Splits the message bits, most significant first, into zero-padded blocks."""
    if n < 1:
        raise ValueError(f"Block size must be at least 1, got {n}")
    if not text:
        return []

    bits = np.unpackbits(np.frombuffer(bytes(text), dtype=np.uint8))
    padding = (-len(bits)) % n
    bits = np.concatenate([bits, np.zeros(padding, dtype=np.uint8)])
    return [tuple(int(b) for b in row) for row in bits.reshape(-1, n)]


def decode_message(
    blocks: Sequence[Sequence[int]], byte_len: int | None = None
) -> bytes:
    """
    Joins blocks back into bytes, dropping the tail padding.

    Args:
        blocks: Equal-length bit blocks
        byte_len: Original message length; all complete bytes when omitted

    Raises:
        DimensionError: If the blocks differ in length or hold too few bits
    """
    if not blocks:
        return b""

    n = len(blocks[0])
    for block in blocks:
        if len(block) != n:
            raise DimensionError(n, len(block), what="ciphertext block")

    bits = np.asarray([bit for block in blocks for bit in block], dtype=np.uint8)
    if byte_len is None:
        byte_len = len(bits) // 8
    if byte_len * 8 > len(bits):
        raise DimensionError(byte_len * 8, len(bits), what="bit stream")

    return np.packbits(bits[: byte_len * 8]).tobytes()


def encrypt_message(text: bytes, key: PublicKey) -> Ciphertext:
    blocks = [encrypt_block(block, key) for block in encode_message(text, key.n)]
    return Ciphertext(n=key.n, byte_len=len(text), blocks=blocks)


def decrypt_message(ciphertext: Ciphertext, key: PrivateKey) -> bytes:
    if ciphertext.n != key.n:
        raise DimensionError(key.n, ciphertext.n, what="ciphertext block size")
    blocks = [decrypt_block(value, key) for value in ciphertext.blocks]
    return decode_message(blocks, ciphertext.byte_len)
