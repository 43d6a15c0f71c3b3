"""Instruction embeddings: bigram detection plus CBOW word vectors.

Trained from scratch with numpy on the (lemmatized) instruction text of a
corpus, optionally padded with extra recipe text. An instruction embeds as
the mean of its token vectors; instructions with no known token embed to
the zero vector, which is maximally distant from everything.
"""
from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class EmbeddingError(Exception):
    pass


def detect_bigrams(
    sentences: list[list[str]], min_count: int = 5, threshold: float = 10.0
) -> dict[tuple[str, str], float]:
    """Score adjacent token pairs; pairs above `threshold` form bigrams.

    score(a, b) = (count(ab) - min_count) * N / (count(a) * count(b))
    with N the total token count.
    """
    unigrams: dict[str, int] = {}
    pairs: dict[tuple[str, str], int] = {}
    total = 0
    for sent in sentences:
        total += len(sent)
        for tok in sent:
            unigrams[tok] = unigrams.get(tok, 0) + 1
        for a, b in zip(sent, sent[1:]):
            pairs[(a, b)] = pairs.get((a, b), 0) + 1

    accepted = {}
    for (a, b), n_ab in pairs.items():
        if n_ab < min_count:
            continue
        score = (n_ab - min_count) * total / (unigrams[a] * unigrams[b])
        if score > threshold:
            accepted[(a, b)] = score
    return accepted


def apply_bigrams(
    sentence: list[str], bigrams: dict[tuple[str, str], float] | set[tuple[str, str]]
) -> list[str]:
    """Greedy left-to-right merge of detected pairs into a_b tokens."""
    out = []
    i = 0
    while i < len(sentence):
        if i + 1 < len(sentence) and (sentence[i], sentence[i + 1]) in bigrams:
            out.append(sentence[i] + "_" + sentence[i + 1])
            i += 2
        else:
            out.append(sentence[i])
            i += 1
    return out


@dataclass
class Word2Vec:
    vocab: list[str]
    vectors: np.ndarray  # (len(vocab), dim) float32 input matrix
    bigrams: set[tuple[str, str]]
    params: dict

    def __post_init__(self):
        self.index = {w: i for i, w in enumerate(self.vocab)}

    @property
    def dim(self) -> int:
        return int(self.vectors.shape[1])

    def vector(self, token: str) -> np.ndarray | None:
        i = self.index.get(token)
        return None if i is None else self.vectors[i]

    def embed_tokens(self, tokens: list[str]) -> np.ndarray:
        merged = apply_bigrams(tokens, self.bigrams)
        rows = [self.index[t] for t in merged if t in self.index]
        if not rows:
            return np.zeros(self.dim, dtype=np.float32)
        return self.vectors[rows].mean(axis=0)


def cosine_distance(u: np.ndarray, v: np.ndarray) -> float:
    """1 - cosine similarity; a zero vector is maximally distant (2.0)."""
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        return 2.0
    return 1.0 - float(np.dot(u, v)) / (nu * nv)


def _sigmoid(x: np.ndarray | float):
    return 1.0 / (1.0 + np.exp(-x))


def train_cbow(
    sentences: list[list[str]],
    dim: int = 100,
    window: int = 5,
    epochs: int = 15,
    negative: int = 5,
    min_count: int = 5,
    bigram_min_count: int = 5,
    bigram_threshold: float = 10.0,
    lr: float = 0.025,
    seed: int = 1,
) -> Word2Vec:
    """CBOW with negative sampling over bigram-merged sentences.

    Deterministic for a fixed seed. The learning rate decays linearly to
    lr/10000 over all training examples.
    """
    scored = detect_bigrams(sentences, bigram_min_count, bigram_threshold)
    bigrams = set(scored)
    merged = [apply_bigrams(s, bigrams) for s in sentences]

    counts: dict[str, int] = {}
    for sent in merged:
        for tok in sent:
            counts[tok] = counts.get(tok, 0) + 1
    vocab = sorted(w for w, c in counts.items() if c >= min_count)
    if not vocab:
        raise EmbeddingError("no token reaches min_count; corpus too small")
    index = {w: i for i, w in enumerate(vocab)}

    # a merged pair whose token got absorbed by overlapping merges or fell
    # under min_count must not survive, or inference would merge-and-drop it
    vocab_set = set(vocab)
    bigrams = {(a, b) for (a, b) in bigrams if f"{a}_{b}" in vocab_set}

    rng = np.random.default_rng(seed)
    w_in = (rng.random((len(vocab), dim), dtype=np.float32) - 0.5) / dim
    w_out = np.zeros((len(vocab), dim), dtype=np.float32)

    # negative sampling distribution: unigram^0.75
    freq = np.array([counts[w] for w in vocab], dtype=np.float64) ** 0.75
    noise = freq / freq.sum()

    encoded = [[index[t] for t in sent if t in index] for sent in merged]
    encoded = [e for e in encoded if len(e) >= 2]
    if not encoded:
        raise EmbeddingError("no sentence has two in-vocabulary tokens")

    total_examples = epochs * sum(len(e) for e in encoded)
    min_lr = lr / 10000.0
    seen = 0
    for _ in range(epochs):
        for sent in encoded:
            for pos, target in enumerate(sent):
                alpha = max(min_lr, lr * (1.0 - seen / total_examples))
                seen += 1
                lo = max(0, pos - window)
                hi = min(len(sent), pos + window + 1)
                context = sent[lo:pos] + sent[pos + 1 : hi]
                if not context:
                    continue
                h = w_in[context].mean(axis=0)

                negatives = rng.choice(len(vocab), size=negative, p=noise)
                targets = [target] + [int(n) for n in negatives if n != target]
                labels = np.zeros(len(targets), dtype=np.float32)
                labels[0] = 1.0

                out = w_out[targets]
                pred = _sigmoid(out @ h)
                grad = (pred - labels) * alpha
                dh = grad @ out
                w_out[targets] -= np.outer(grad, h)
                w_in[context] -= dh / len(context)

    return Word2Vec(
        vocab=vocab,
        vectors=w_in,
        bigrams=bigrams,
        params={
            "dim": dim,
            "window": window,
            "epochs": epochs,
            "negative": negative,
            "min_count": min_count,
            "bigram_min_count": bigram_min_count,
            "bigram_threshold": bigram_threshold,
            "lr": lr,
            "seed": seed,
        },
    )


_MAGIC = b"PMW2V1\n"


def save_model(model: Word2Vec, path: str | Path) -> None:
    """Binary format: magic, length-prefixed JSON header, float32 matrix."""
    header = json.dumps(
        {
            "vocab": model.vocab,
            "bigrams": sorted(list(b) for b in model.bigrams),
            "params": model.params,
            "shape": list(model.vectors.shape),
        }
    ).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<I", len(header)))
        fh.write(header)
        fh.write(np.ascontiguousarray(model.vectors, dtype="<f4").tobytes())


def load_model(path: str | Path) -> Word2Vec:
    with open(path, "rb") as fh:
        magic = fh.read(len(_MAGIC))
        if magic != _MAGIC:
            raise EmbeddingError(f"{path}: not a model file")
        (hlen,) = struct.unpack("<I", fh.read(4))
        header = json.loads(fh.read(hlen).decode("utf-8"))
        rows, cols = header["shape"]
        data = fh.read(rows * cols * 4)
    if len(data) != rows * cols * 4:
        raise EmbeddingError(f"{path}: truncated vector matrix")
    vectors = np.frombuffer(data, dtype="<f4").reshape(rows, cols).copy()
    return Word2Vec(
        vocab=header["vocab"],
        vectors=vectors,
        bigrams={tuple(b) for b in header["bigrams"]},
        params=header["params"],
    )
