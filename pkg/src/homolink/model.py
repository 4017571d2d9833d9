"""Link predictor: two-layer GCN, topology-augmented Fermi-Dirac decoder, training loop.

The decoder concatenates the squared embedding difference of a node pair with
the pair's persistence image, maps it through a two-layer MLP to a scalar
"distance", and converts that to an edge probability via
prob = 1 / (exp(dist - 2) + 1). Everything is plain numpy with hand-written
backpropagation; gradients are exact and checked against finite differences
in the test suite. Persistence images are constants: no gradient flows into
them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .graphs import Graph, canonical_edge

LEAKY_SLOPE = 0.2
PROB_EPS = 1e-12
ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8

PARAM_KEYS = ("w1", "w2", "mlp_w1", "mlp_b1", "mlp_w2", "mlp_b2")


@dataclass
class ModelState:
    """Parameters plus Adam moments for the GCN and decoder MLP."""

    params: dict[str, np.ndarray]
    adam_m: dict[str, np.ndarray]
    adam_v: dict[str, np.ndarray]
    step: int = 0

    @property
    def embed_dim(self) -> int:
        return self.params["w2"].shape[1]

    def copy(self) -> "ModelState":
        return ModelState(
            {k: v.copy() for k, v in self.params.items()},
            {k: v.copy() for k, v in self.adam_m.items()},
            {k: v.copy() for k, v in self.adam_v.items()},
            self.step,
        )


def _glorot(rng: np.random.Generator, fan_in: int, fan_out: int) -> np.ndarray:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=(fan_in, fan_out))


def init_model(
    d_in: int,
    image_dim: int,
    hidden: int = 100,
    embed: int = 16,
    mlp_hidden: int = 64,
    seed: int | np.random.Generator = 0,
) -> ModelState:
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    dec_in = embed + image_dim
    params = {
        "w1": _glorot(rng, d_in, hidden),
        "w2": _glorot(rng, hidden, embed),
        "mlp_w1": _glorot(rng, dec_in, mlp_hidden),
        "mlp_b1": np.zeros(mlp_hidden),
        "mlp_w2": _glorot(rng, mlp_hidden, 1),
        "mlp_b2": np.zeros(1),
    }
    zeros = lambda: {k: np.zeros_like(v) for k, v in params.items()}
    return ModelState(params, zeros(), zeros())


def normalized_adjacency(g: Graph) -> np.ndarray:
    """Symmetric degree-normalized adjacency with self-loops, dense (n, n)."""
    A = np.eye(g.n)
    for u, v in g.edges:
        A[u, v] = 1.0
        A[v, u] = 1.0
    d = A.sum(axis=1)
    inv_sqrt = 1.0 / np.sqrt(d)
    return A * inv_sqrt[:, None] * inv_sqrt[None, :]


def _gcn_intermediates(S: np.ndarray, X: np.ndarray, params: dict):
    P1 = S @ X
    Z1 = P1 @ params["w1"]
    H1 = np.maximum(Z1, 0.0)
    P2 = S @ H1
    H2 = P2 @ params["w2"]
    return P1, Z1, H1, P2, H2


def gcn_forward(g: Graph, X: np.ndarray, state: ModelState) -> np.ndarray:
    """Node embeddings from the two-layer graph convolution.

    H1 = relu(S X W1), H = S H1 W2 with S the normalized adjacency; the
    activation sits on the hidden layer only.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] != g.n:
        raise ValueError("X must be an (n, d) feature matrix")
    S = normalized_adjacency(g)
    return _gcn_intermediates(S, X, state.params)[-1]


def _decode_batch(Hu: np.ndarray, Hv: np.ndarray, PI: np.ndarray, params: dict):
    F = np.concatenate([(Hu - Hv) ** 2, PI], axis=1)
    Z1 = F @ params["mlp_w1"] + params["mlp_b1"]
    A1 = np.where(Z1 > 0, Z1, LEAKY_SLOPE * Z1)
    dist = (A1 @ params["mlp_w2"] + params["mlp_b2"]).ravel()
    prob = 1.0 / (np.exp(dist - 2.0) + 1.0)
    return prob, (F, Z1, A1, dist)


def decode(h_u: np.ndarray, h_v: np.ndarray, pi: np.ndarray, state: ModelState) -> float:
    """Edge probability for one pair; symmetric in (h_u, h_v)."""
    prob, _ = _decode_batch(
        np.atleast_2d(h_u), np.atleast_2d(h_v), np.atleast_2d(pi), state.params
    )
    return float(prob[0])


def _unpack_batch(batch):
    u_idx = np.array([b[0] for b in batch], dtype=int)
    v_idx = np.array([b[1] for b in batch], dtype=int)
    labels = np.array([b[2] for b in batch], dtype=float)
    PI = np.vstack([np.asarray(b[3], dtype=float) for b in batch])
    return u_idx, v_idx, labels, PI


def _loss_and_grads(S, X, u_idx, v_idx, labels, PI, params):
    B = len(labels)
    P1, Z1g, H1, P2, H2 = _gcn_intermediates(S, X, params)
    Hu = H2[u_idx]
    Hv = H2[v_idx]
    prob, (F, Z1, A1, dist) = _decode_batch(Hu, Hv, PI, params)
    p_hat = np.clip(prob, PROB_EPS, 1.0 - PROB_EPS)
    loss = -np.mean(labels * np.log(p_hat) + (1.0 - labels) * np.log(1.0 - p_hat))

    inside = (prob > PROB_EPS) & (prob < 1.0 - PROB_EPS)
    d_dist = np.where(inside, (labels - prob) / B, 0.0)

    grads = {}
    grads["mlp_b2"] = np.array([d_dist.sum()])
    grads["mlp_w2"] = A1.T @ d_dist[:, None]
    dA1 = d_dist[:, None] @ params["mlp_w2"].T
    dZ1 = dA1 * np.where(Z1 > 0, 1.0, LEAKY_SLOPE)
    grads["mlp_w1"] = F.T @ dZ1
    grads["mlp_b1"] = dZ1.sum(axis=0)
    dF = dZ1 @ params["mlp_w1"].T

    embed = Hu.shape[1]
    dSq = dF[:, :embed]
    dHu = dSq * 2.0 * (Hu - Hv)
    dH2 = np.zeros_like(H2)
    np.add.at(dH2, u_idx, dHu)
    np.add.at(dH2, v_idx, -dHu)

    grads["w2"] = P2.T @ dH2
    dP2 = dH2 @ params["w2"].T
    dH1 = S.T @ dP2
    dZ1g = dH1 * (Z1g > 0)
    grads["w1"] = P1.T @ dZ1g
    return float(loss), grads


def loss_and_gradients(batch, g: Graph, X: np.ndarray, state: ModelState):
    """Mean binary cross-entropy over the batch and exact gradients for all parameters.

    ``batch`` is a sequence of (u, v, label, image vector) tuples with labels
    in {0, 1}. Probabilities are clamped away from 0 and 1 before the log.
    """
    u_idx, v_idx, labels, PI = _unpack_batch(batch)
    if not np.isin(labels, (0.0, 1.0)).all():
        raise ValueError("labels must be 0 or 1")
    S = normalized_adjacency(g)
    return _loss_and_grads(S, np.asarray(X, dtype=float), u_idx, v_idx, labels, PI, state.params)


def adam_step(state: ModelState, grads: dict, lr: float, weight_decay: float = 0.0) -> None:
    """One Adam update with bias correction, in place."""
    state.step += 1
    t = state.step
    for key in PARAM_KEYS:
        g = grads[key]
        if weight_decay:
            g = g + weight_decay * state.params[key]
        m = state.adam_m[key]
        v = state.adam_v[key]
        m *= ADAM_BETA1
        m += (1.0 - ADAM_BETA1) * g
        v *= ADAM_BETA2
        v += (1.0 - ADAM_BETA2) * g * g
        m_hat = m / (1.0 - ADAM_BETA1**t)
        v_hat = v / (1.0 - ADAM_BETA2**t)
        state.params[key] -= lr * m_hat / (np.sqrt(v_hat) + ADAM_EPS)


@dataclass
class DataSplit:
    """Edge split for link prediction; negatives are non-edges of the full graph."""

    train_pos: list[tuple[int, int]]
    val_pos: list[tuple[int, int]]
    test_pos: list[tuple[int, int]]
    val_neg: list[tuple[int, int]]
    test_neg: list[tuple[int, int]]
    seed: int


def make_split(
    g: Graph, ratios: tuple[float, float, float] = (0.85, 0.05, 0.10), seed: int = 0
) -> DataSplit:
    """Random 85/5/10 edge split with matching negative samples for val and test."""
    if abs(sum(ratios) - 1.0) > 1e-9 or min(ratios) <= 0:
        raise ValueError("ratios must be positive and sum to 1")
    m = g.num_edges
    if m < 20:
        raise ValueError(f"need at least 20 edges to split, got {m}")
    max_pairs = g.n * (g.n - 1) // 2
    rng = np.random.default_rng(seed)
    perm = rng.permutation(m)
    n_val = int(m * ratios[1])
    n_test = int(m * ratios[2])
    edges = [g.edges[i] for i in perm]
    val_pos = edges[:n_val]
    test_pos = edges[n_val : n_val + n_test]
    train_pos = edges[n_val + n_test :]

    needed = n_val + n_test
    if max_pairs - m < needed:
        raise ValueError("graph too dense to sample enough negative pairs")
    negatives: list[tuple[int, int]] = []
    chosen: set[tuple[int, int]] = set()
    while len(negatives) < needed:
        u = int(rng.integers(g.n))
        v = int(rng.integers(g.n))
        if u == v:
            continue
        e = canonical_edge(u, v)
        if e in chosen or g.has_edge(*e):
            continue
        chosen.add(e)
        negatives.append(e)
    return DataSplit(train_pos, val_pos, test_pos, negatives[:n_val], negatives[n_val:], seed)


def roc_auc(scores, labels) -> float:
    """Area under the ROC curve, computed as the Mann-Whitney statistic.

    Equals P(score+ > score-) + P(tie)/2 over positive/negative pairs; ties
    get average ranks.
    """
    scores = np.asarray(scores, dtype=float)
    labels = np.asarray(labels)
    if scores.shape != labels.shape or scores.ndim != 1:
        raise ValueError("scores and labels must be 1-D and equally long")
    n_pos = int((labels == 1).sum())
    n_neg = int((labels == 0).sum())
    if n_pos == 0 or n_neg == 0:
        raise ValueError("both classes must be present")
    _, inverse, counts = np.unique(scores, return_inverse=True, return_counts=True)
    upper = np.cumsum(counts)
    avg_rank = (upper - counts + 1 + upper) / 2.0
    ranks = avg_rank[inverse]
    pos_rank_sum = ranks[labels == 1].sum()
    return float((pos_rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg))


@dataclass
class TrainConfig:
    epochs: int = 2000
    lr: float = 0.01
    weight_decay: float = 0.0
    patience: int = 200
    seed: int = 0
    hidden: int = 100
    embed: int = 16
    mlp_hidden: int = 64
    image_dim: int = 25


@dataclass
class TrainResult:
    state: ModelState
    history: list[tuple[int, float, float]] = field(default_factory=list)
    test_auc: float = 0.0
    best_epoch: int = 0
    seed: int = 0


def _pair_images(provider, pairs) -> np.ndarray:
    return np.vstack([np.asarray(provider(u, v), dtype=float) for u, v in pairs])


def _eval_auc(S, X, params, pairs_pos, pairs_neg, PI):
    _, _, _, _, H2 = _gcn_intermediates(S, X, params)
    pairs = pairs_pos + pairs_neg
    u_idx = np.array([p[0] for p in pairs], dtype=int)
    v_idx = np.array([p[1] for p in pairs], dtype=int)
    prob, _ = _decode_batch(H2[u_idx], H2[v_idx], PI, params)
    labels = np.concatenate([np.ones(len(pairs_pos)), np.zeros(len(pairs_neg))])
    return roc_auc(prob, labels)


def train(
    g: Graph,
    X: np.ndarray,
    split: DataSplit,
    image_provider,
    config: TrainConfig,
) -> TrainResult:
    """Train the link predictor with per-epoch negative sampling and early stopping.

    ``g`` must already exclude the validation and test positive edges from
    message passing. Each epoch draws fresh training negatives, equal in
    number to the training positives, from the non-edges of the full graph
    (excluding the held-out negative samples). The state with the best
    validation ROC-AUC is returned, with the test ROC-AUC evaluated there.
    Runs are bit-deterministic for a fixed seed.
    """
    X = np.asarray(X, dtype=float)
    rng = np.random.default_rng(config.seed)
    state = init_model(
        X.shape[1],
        config.image_dim,
        hidden=config.hidden,
        embed=config.embed,
        mlp_hidden=config.mlp_hidden,
        seed=rng,
    )
    S = normalized_adjacency(g)

    all_pos = set(split.train_pos) | set(split.val_pos) | set(split.test_pos)
    held_neg = set(split.val_neg) | set(split.test_neg)
    pool = [
        e
        for e in itertools.combinations(range(g.n), 2)
        if e not in all_pos and e not in held_neg
    ]
    n_train = len(split.train_pos)
    if n_train == 0 or len(pool) < n_train:
        raise ValueError("not enough non-edges to sample training negatives")

    PI_train_pos = _pair_images(image_provider, split.train_pos)
    PI_val = _pair_images(image_provider, split.val_pos + split.val_neg)
    PI_test = _pair_images(image_provider, split.test_pos + split.test_neg)

    best_auc = -np.inf
    best_epoch = 0
    best_state = state.copy()
    history: list[tuple[int, float, float]] = []
    labels = np.concatenate([np.ones(n_train), np.zeros(n_train)])

    for epoch in range(config.epochs):
        neg_idx = rng.choice(len(pool), size=n_train, replace=False)
        negs = [pool[i] for i in neg_idx]
        PI_neg = _pair_images(image_provider, negs)
        pairs = split.train_pos + negs
        u_idx = np.array([p[0] for p in pairs], dtype=int)
        v_idx = np.array([p[1] for p in pairs], dtype=int)
        PI = np.vstack([PI_train_pos, PI_neg])
        loss, grads = _loss_and_grads(S, X, u_idx, v_idx, labels, PI, state.params)
        adam_step(state, grads, config.lr, config.weight_decay)
        val_auc = _eval_auc(S, X, state.params, split.val_pos, split.val_neg, PI_val)
        history.append((epoch, loss, val_auc))
        if val_auc > best_auc:
            best_auc = val_auc
            best_epoch = epoch
            best_state = state.copy()
        elif epoch - best_epoch >= config.patience:
            break

    test_auc = _eval_auc(S, X, best_state.params, split.test_pos, split.test_neg, PI_test)
    return TrainResult(best_state, history, test_auc, best_epoch, config.seed)
