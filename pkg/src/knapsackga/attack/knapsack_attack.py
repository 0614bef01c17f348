"""Ciphertext-only recovery of knapsack plaintext blocks with the genetic algorithm."""

from functools import partial

from knapsackga.cipher.merkle_hellman import decode_message, encrypt_block
from knapsackga.core.exceptions import DimensionError, InfeasibleCiphertextError
from knapsackga.core.logging import logger
from knapsackga.core.models import (
    AttackReport,
    BlockRecovery,
    Ciphertext,
    GaParams,
    Instance,
    PublicKey,
)
from knapsackga.core.subset_sum import DEFAULT_ORACLE_LIMIT, count_solutions
from knapsackga.ga.engine import run_ga
from knapsackga.worker.executor import get_execution_strategy


def check_feasible(value: int, key: PublicKey, index: int | None = None) -> None:
    if value < 0 or value > key.capacity:
        raise InfeasibleCiphertextError(value, key.capacity, index)


def attack_block(
    value: int,
    key: PublicKey,
    params: GaParams,
    index: int = 0,
    oracle_limit: int = DEFAULT_ORACLE_LIMIT,
) -> BlockRecovery:
    """
    Searches for a plaintext block whose public-key subset sum equals ``value``.

    The private key is never consulted. When the key is small enough for the
    oracle, the oracle also counts the preimages so that ambiguity is
    reported even when the GA only found one of them.

    Raises:
        InfeasibleCiphertextError: If no subset of the key can reach ``value``
    """
    check_feasible(value, key, index)

    instance = Instance(weights=key.weights, target=value)
    run = run_ga(instance, params)

    known = len(run.solutions)
    if key.n <= oracle_limit:
        known = max(known, count_solutions(instance, oracle_limit))

    bits = run.solutions[0] if run.solutions else None
    if bits is not None:
        assert encrypt_block(bits, key) == value

    return BlockRecovery(
        index=index,
        value=value,
        bits=bits,
        ambiguous=known > 1,
        known_preimages=known,
        generations=run.generations_executed,
    )


def _attack_indexed_block(
    task: tuple[int, int], key: PublicKey, params: GaParams, oracle_limit: int
) -> BlockRecovery:
    index, value = task
    return attack_block(
        value, key, params.derive(index), index=index, oracle_limit=oracle_limit
    )


def attack_message(
    ciphertext: Ciphertext,
    key: PublicKey,
    params: GaParams,
    jobs: int = 1,
    oracle_limit: int = DEFAULT_ORACLE_LIMIT,
) -> tuple[bytes, AttackReport]:
    """
    Attacks every block independently and decodes what was recovered.

    Block ``i`` runs with the base parameters' RNG stream extended by ``i``,
    so a message attack is reproducible from one seed. Blocks that could
    not be recovered are reported as failed and decode as zero bits.

    Returns:
        tuple[bytes, AttackReport]: The recovered plaintext and the report
    """
    if ciphertext.n != key.n:
        raise DimensionError(key.n, ciphertext.n, what="ciphertext block size")
    for index, value in enumerate(ciphertext.blocks):
        check_feasible(value, key, index)

    logger.info(
        f"Attacking {len(ciphertext.blocks)} blocks under key {key.fingerprint} "
        f"with {jobs} worker(s)"
    )
    strategy = get_execution_strategy(jobs)
    recoveries = strategy.map(
        partial(
            _attack_indexed_block, key=key, params=params, oracle_limit=oracle_limit
        ),
        list(enumerate(ciphertext.blocks)),
    )

    blocks = [r.bits if r.bits is not None else (0,) * key.n for r in recoveries]
    plaintext = decode_message(blocks, ciphertext.byte_len)

    report = AttackReport(
        recovered_blocks=[r.bits for r in recoveries],
        ambiguous_blocks=[r.index for r in recoveries if r.ambiguous],
        failed_blocks=[r.index for r in recoveries if not r.recovered],
        total_generations=sum(r.generations for r in recoveries),
        byte_len=ciphertext.byte_len,
        plaintext=plaintext.decode("utf-8", errors="replace"),
        plaintext_hex=plaintext.hex(),
    )

    if report.failed_blocks:
        logger.warning(
            f"Attack incomplete: {len(report.failed_blocks)} of "
            f"{len(recoveries)} blocks not recovered: {report.failed_blocks}"
        )
    else:
        logger.info(
            f"Recovered all {len(recoveries)} blocks "
            f"({len(report.ambiguous_blocks)} ambiguous)"
        )
    return plaintext, report
