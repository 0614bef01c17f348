import argparse
import sys
from pathlib import Path

from knapsackga.cipher.merkle_hellman import (
    decrypt_message,
    encrypt_message,
    generate_keypair,
)
from knapsackga.commands.base_command import (
    BaseCommand,
    ExitCode,
    add_seed_argument,
    resolve_seed,
    write_output,
)
from knapsackga.commands.command_registry import register_command
from knapsackga.core.config import KnapsackSettings
from knapsackga.core.logging import logger
from knapsackga.core.models import Ciphertext, PrivateKey, PublicKey


@register_command("keygen")
class KeygenCommand(BaseCommand):
    help = "generate a Merkle-Hellman keypair"
    description = (
        "Writes a private and a public key file. Identical --n, --magnitude "
        "and --seed always produce identical files."
    )

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "--n", type=int, default=None, help="block size in bits (default 8)"
        )
        parser.add_argument(
            "--magnitude",
            type=int,
            default=None,
            help="bit width of the random increments (default 10)",
        )
        add_seed_argument(parser)
        parser.add_argument(
            "--private-out", type=Path, required=True, help="private key JSON path"
        )
        parser.add_argument(
            "--public-out", type=Path, required=True, help="public key JSON path"
        )

    def execute(
        self, args: argparse.Namespace, settings: KnapsackSettings
    ) -> ExitCode:
        n = args.n if args.n is not None else settings.KNAP_BLOCK_SIZE
        magnitude = (
            args.magnitude
            if args.magnitude is not None
            else settings.KNAP_KEY_MAGNITUDE
        )
        private, public = generate_keypair(n, resolve_seed(args, settings), magnitude)

        private.to_file(args.private_out)
        public.to_file(args.public_out)
        logger.info(f"Wrote {args.private_out} and {args.public_out}")

        print(f"public key fingerprint: {public.fingerprint}")
        return ExitCode.OK


@register_command("encrypt")
class EncryptCommand(BaseCommand):
    help = "encrypt a message under a public key"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "--public", type=Path, required=True, help="public key JSON path"
        )
        source = parser.add_mutually_exclusive_group(required=True)
        source.add_argument("--text", default=None, help="message text (UTF-8)")
        source.add_argument(
            "--in", dest="input", type=Path, default=None, help="message file (bytes)"
        )
        parser.add_argument(
            "--out",
            type=Path,
            default=None,
            help="ciphertext JSON path (default stdout)",
        )

    def execute(
        self, args: argparse.Namespace, settings: KnapsackSettings
    ) -> ExitCode:
        key = PublicKey.from_file(args.public)
        message = (
            args.text.encode("utf-8")
            if args.text is not None
            else args.input.read_bytes()
        )
        ciphertext = encrypt_message(message, key)
        write_output(ciphertext.to_json(), args.out)
        logger.info(
            f"Encrypted {len(message)} bytes into {len(ciphertext.blocks)} blocks"
        )
        return ExitCode.OK


@register_command("decrypt")
class DecryptCommand(BaseCommand):
    help = "decrypt a ciphertext with the private key"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "--private", type=Path, required=True, help="private key JSON path"
        )
        parser.add_argument(
            "--in", dest="input", type=Path, required=True, help="ciphertext JSON path"
        )
        parser.add_argument(
            "--out",
            type=Path,
            default=None,
            help="plaintext file (raw bytes, default stdout)",
        )

    def execute(
        self, args: argparse.Namespace, settings: KnapsackSettings
    ) -> ExitCode:
        key = PrivateKey.from_file(args.private)
        ciphertext = Ciphertext.from_file(args.input)
        plaintext = decrypt_message(ciphertext, key)

        if args.out is None:
            sys.stdout.buffer.write(plaintext)
            sys.stdout.flush()
        else:
            args.out.write_bytes(plaintext)
        return ExitCode.OK
