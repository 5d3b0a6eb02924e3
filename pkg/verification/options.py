"""Argument helpers shared by the management commands."""
import re

from django.core.exceptions import ValidationError

from combinat.pairings import Pairing
from combinat.partitions import SetPartition
from montecarlo.estimators import SamplerConfig

BLOCKS_PATTERN = re.compile(r"^\d+(,\d+)*(\|\d+(,\d+)*)*$")


def validate_blocks_string(value: str):
    if not BLOCKS_PATTERN.match(value):
        raise ValidationError(
            'Invalid block format. Expected "|"-separated blocks of comma-separated '
            'positions, for example: "1,2|3,4"'
        )


def parse_blocks(text: str) -> SetPartition:
    compact = re.sub(r"\s+", "", text or "")
    validate_blocks_string(compact)
    return SetPartition(
        tuple(tuple(int(e) for e in block.split(",")) for block in compact.split("|"))
    )


def parse_pairing(text: str) -> Pairing:
    partition = parse_blocks(text)
    return Pairing(partition.blocks)


def add_sampler_arguments(parser):
    parser.add_argument("--seed", type=int, help="Monte Carlo seed (ORTHO_MC_SEED)")
    parser.add_argument(
        "--samples", type=int, help="Monte Carlo sample count (ORTHO_MC_SAMPLES)"
    )
    parser.add_argument(
        "--workers", type=int, help="Monte Carlo worker streams (ORTHO_MC_WORKERS)"
    )


def sampler_from_options(n: int, options) -> SamplerConfig:
    return SamplerConfig.from_settings(
        n,
        seed=options.get("seed"),
        samples=options.get("samples"),
        workers=options.get("workers"),
    )
