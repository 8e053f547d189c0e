"""Synthetic benchmark corpora with controllable class separation.

Each outcome class owns a disjoint pool of signature words; all classes
share a background pool. A document mixes signature and background draws,
and with probability `noise` each signature slot is replaced by a word from
another class's pool. Decision and unanimity texts are assigned per class so
one generated corpus exercises both classification tasks end to end.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .corpus import RawDecision

SIGNATURE_WORDS_PER_DOC = 6
BACKGROUND_WORDS_PER_DOC = 4


@dataclass(frozen=True)
class SyntheticClass:
    decision_label: str
    decision_text: str
    unanimity_text: str
    signature_pool: tuple[str, ...]


CLASS_SPECS: tuple[SyntheticClass, ...] = (
    SyntheticClass(
        decision_label="yes",
        decision_text="Recurso conhecido e provido",
        unanimity_text="Unanimidade",
        signature_pool=(
            "indenização", "reparação", "restituição", "dano", "moral", "consumidor",
            "cobrança", "indevida", "contrato", "devolução", "ressarcimento", "abusiva",
        ),
    ),
    SyntheticClass(
        decision_label="partial",
        decision_text="Recurso conhecido e parcialmente provido",
        unanimity_text="Decisão unânime",
        signature_pool=(
            "redução", "parcial", "honorários", "sucumbência", "minoração", "quantum",
            "proporcional", "readequação", "juros", "correção", "metade", "ajuste",
        ),
    ),
    SyntheticClass(
        decision_label="no",
        decision_text="Recurso conhecido e não provido",
        unanimity_text="Por maioria",
        signature_pool=(
            "improcedência", "manutenção", "sentença", "litigância", "culpa", "exclusiva",
            "comprovação", "ausência", "inexistência", "regularidade", "exercício", "preclusão",
        ),
    ),
)

BACKGROUND_POOL: tuple[str, ...] = (
    "processo", "recurso", "apelação", "tribunal", "julgamento", "câmara",
    "relator", "vara", "comarca", "autos", "petição", "instância",
)


def gen_synthetic(n_per_class: int, noise: float, seed: int) -> list[RawDecision]:
    """Deterministically generate n_per_class records for each outcome class."""
    if n_per_class < 1:
        raise ValueError("n_per_class must be >= 1")
    if not 0 <= noise < 1:
        raise ValueError("noise must be in [0, 1)")
    rng = np.random.default_rng(seed)
    records: list[RawDecision] = []
    counter = 0
    for class_index, spec in enumerate(CLASS_SPECS):
        other_pools = [
            word
            for other_index, other in enumerate(CLASS_SPECS)
            if other_index != class_index
            for word in other.signature_pool
        ]
        for _ in range(n_per_class):
            counter += 1
            words = [
                spec.signature_pool[i]
                for i in rng.integers(0, len(spec.signature_pool), SIGNATURE_WORDS_PER_DOC)
            ]
            if noise > 0:
                for position in range(len(words)):
                    if rng.random() < noise:
                        words[position] = other_pools[int(rng.integers(0, len(other_pools)))]
            words.extend(
                BACKGROUND_POOL[i]
                for i in rng.integers(0, len(BACKGROUND_POOL), BACKGROUND_WORDS_PER_DOC)
            )
            order = rng.permutation(len(words))
            description = " ".join(words[i] for i in order)
            records.append(
                RawDecision(
                    id=f"syn-{counter:05d}",
                    description=description,
                    decision_text=spec.decision_text,
                    unanimity_text=spec.unanimity_text,
                )
            )
    return records
