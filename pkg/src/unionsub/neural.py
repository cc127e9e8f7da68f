"""Toy differentiable graph layers with hand-rolled backprop.

Coefficient tables enter the layers through a small Trans MLP whose
per-channel outputs are softmax-normalized over each node's neighbors.
Everything is plain numpy; gradients are verified against central finite
differences (see grad_check).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .descriptors import Encoding, UNION_PATH_SVD, coefficient_table
from .graphs import GraphError

TRANS_HIDDEN = 16  # Trans MLP is 1 -> 16 -> channels, ReLU inside


# ---------------------------------------------------------------------------
# MLP primitive
# ---------------------------------------------------------------------------

@dataclass
class Mlp:
    """Linear layers with ReLU between them (not after the last)."""

    weights: list
    biases: list

    def arrays(self):
        out = []
        for w, b in zip(self.weights, self.biases):
            out.append(w)
            out.append(b)
        return out

    @property
    def in_dim(self):
        return self.weights[0].shape[0]

    @property
    def out_dim(self):
        return self.weights[-1].shape[1]


def glorot_uniform(rng, fan_in, fan_out):
    limit = math.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=(fan_in, fan_out))


def mlp_init(dims, rng):
    weights = [glorot_uniform(rng, dims[i], dims[i + 1]) for i in range(len(dims) - 1)]
    biases = [np.zeros(dims[i + 1]) for i in range(len(dims) - 1)]
    return Mlp(weights, biases)


def mlp_forward(mlp, x):
    caches = []
    h = x
    last = len(mlp.weights) - 1
    for i, (w, b) in enumerate(zip(mlp.weights, mlp.biases)):
        z = h @ w + b
        caches.append((h, z))
        h = np.maximum(z, 0.0) if i < last else z
    return h, caches


def mlp_backward(mlp, caches, dout):
    grads = Mlp(
        [np.zeros_like(w) for w in mlp.weights],
        [np.zeros_like(b) for b in mlp.biases],
    )
    d = dout
    last = len(mlp.weights) - 1
    for i in range(last, -1, -1):
        h, z = caches[i]
        dz = d * (z > 0) if i < last else d
        grads.weights[i] += h.T @ dz
        grads.biases[i] += dz.sum(axis=0)
        d = dz @ mlp.weights[i].T
    return d, grads


# ---------------------------------------------------------------------------
# Graph wiring
# ---------------------------------------------------------------------------

def directed_pairs(g):
    """Directed pair arrays (center, neighbor) grouped by center node.

    Returns (center, nbr, seg) where pairs seg[v]:seg[v+1] are the pairs
    whose center is v.
    """
    center, nbr = [], []
    seg = [0]
    for v in range(g.num_nodes):
        for u in g.neighbors(v):
            center.append(v)
            nbr.append(u)
        seg.append(len(center))
    return np.array(center, dtype=int), np.array(nbr, dtype=int), seg


# ---------------------------------------------------------------------------
# Trans: coefficient -> per-channel neighbor weights
# ---------------------------------------------------------------------------

def trans_forward(trans_mlp, g, coeffs):
    """Per-directed-pair channel weights t(v, u), softmaxed over N(v).

    Returns (t, pairs, cache): t has one row per directed pair, and for every
    non-isolated v each channel of t sums to 1 over v's neighbors.
    """
    center, nbr, seg = directed_pairs(g)
    x = np.empty((len(center), 1))
    for i in range(len(center)):
        key = (int(center[i]), int(nbr[i]))
        if key not in coeffs.normalized:
            raise GraphError(f"missing coefficient for directed pair {key}")
        x[i, 0] = coeffs.normalized[key]
    z, mlp_cache = mlp_forward(trans_mlp, x)
    t = np.empty_like(z)
    for v in range(g.num_nodes):
        lo, hi = seg[v], seg[v + 1]
        if lo == hi:
            continue
        block = z[lo:hi]
        e = np.exp(block - block.max(axis=0))
        t[lo:hi] = e / e.sum(axis=0)
    return t, (center, nbr, seg), (mlp_cache, t, seg)


def trans_backward(trans_mlp, cache, dt):
    mlp_cache, t, seg = cache
    dz = np.empty_like(dt)
    for v in range(len(seg) - 1):
        lo, hi = seg[v], seg[v + 1]
        if lo == hi:
            continue
        s = t[lo:hi]
        block = dt[lo:hi]
        dz[lo:hi] = s * (block - (block * s).sum(axis=0))
    _, grads = mlp_backward(trans_mlp, mlp_cache, dz)
    return grads


def trans_table(trans_mlp, g, coeffs):
    """Dict view {(v, u): weight vector}; errors on isolated-node queries."""
    t, (center, nbr, _), _ = trans_forward(trans_mlp, g, coeffs)
    return {(int(v), int(u)): t[i] for i, (v, u) in enumerate(zip(center, nbr))}


# ---------------------------------------------------------------------------
# Layers
# ---------------------------------------------------------------------------

@dataclass
class UnionLayerParams:
    """(1 + eps) self-term plus Trans-weighted neighbor sum through an MLP."""

    epsilon: np.ndarray  # 0-d array, trainable
    mlp: Mlp
    trans: Mlp | None  # None means unit weights (plain GIN-like base)

    def arrays(self):
        out = [self.epsilon] + self.mlp.arrays()
        if self.trans is not None:
            out += self.trans.arrays()
        return out


@dataclass
class GcnLayerParams:
    """Symmetric-degree-normalized sum, then linear + ReLU."""

    weight: np.ndarray
    bias: np.ndarray
    trans: Mlp | None

    def arrays(self):
        out = [self.weight, self.bias]
        if self.trans is not None:
            out += self.trans.arrays()
        return out


def union_layer_params(in_dim, out_dim, rng, with_trans=True, mlp_dims=None):
    dims = mlp_dims or (in_dim, out_dim)
    trans = mlp_init((1, TRANS_HIDDEN, in_dim), rng) if with_trans else None
    return UnionLayerParams(np.zeros(()), mlp_init(dims, rng), trans)


def gcn_layer_params(in_dim, out_dim, rng, with_trans=False):
    trans = mlp_init((1, TRANS_HIDDEN, in_dim), rng) if with_trans else None
    return GcnLayerParams(
        glorot_uniform(rng, in_dim, out_dim), np.zeros(out_dim), trans
    )


def _neighbor_weights(params, g, coeffs, pairs):
    """Trans weights per pair, or None for unit weights."""
    if params.trans is None:
        return None, None
    if coeffs is None:
        raise GraphError("layer has a Trans MLP but no coefficients were given")
    t, _, tcache = trans_forward(params.trans, g, coeffs)
    return t, tcache


def union_layer_forward(params, g, h, coeffs=None):
    """h'_v = MLP((1 + eps) h_v + sum_u t(v,u) * h_u), elementwise products.

    Isolated nodes keep only the (1 + eps) self term.
    """
    if h.shape[0] != g.num_nodes:
        raise GraphError("feature rows must match num_nodes")
    center, nbr, seg = directed_pairs(g)
    t, tcache = _neighbor_weights(params, g, coeffs, (center, nbr, seg))
    msg = h[nbr] if t is None else t * h[nbr]
    agg = (1.0 + float(params.epsilon)) * h
    np.add.at(agg, center, msg)
    out, mlp_cache = mlp_forward(params.mlp, agg)
    return out, (g, h, center, nbr, t, tcache, mlp_cache)


def union_layer_backward(params, cache, dout):
    g, h, center, nbr, t, tcache, mlp_cache = cache
    d_agg, mlp_grads = mlp_backward(params.mlp, mlp_cache, dout)
    d_eps = np.array(float((d_agg * h).sum()))
    dh = (1.0 + float(params.epsilon)) * d_agg
    d_msg = d_agg[center]
    if t is None:
        np.add.at(dh, nbr, d_msg)
        trans_grads = None
    else:
        np.add.at(dh, nbr, t * d_msg)
        dt = d_msg * h[nbr]
        trans_grads = trans_backward(params.trans, tcache, dt)
    grads = UnionLayerParams(d_eps, mlp_grads, trans_grads)
    return dh, grads


def gcn_layer_forward(params, g, h, coeffs=None):
    """h' = relu((sum_u t(v,u) * h_u / sqrt(d_v d_u)) W + b)."""
    if h.shape[0] != g.num_nodes:
        raise GraphError("feature rows must match num_nodes")
    center, nbr, seg = directed_pairs(g)
    t, tcache = _neighbor_weights(params, g, coeffs, (center, nbr, seg))
    degs = np.array([max(1, g.degree(v)) for v in range(g.num_nodes)], dtype=float)
    norm = 1.0 / np.sqrt(degs[center] * degs[nbr])
    msg = h[nbr] * norm[:, None] if t is None else t * h[nbr] * norm[:, None]
    agg = np.zeros_like(h)
    np.add.at(agg, center, msg)
    z = agg @ params.weight + params.bias
    out = np.maximum(z, 0.0)
    return out, (g, h, center, nbr, norm, t, tcache, agg, z)


def gcn_layer_backward(params, cache, dout):
    g, h, center, nbr, norm, t, tcache, agg, z = cache
    dz = dout * (z > 0)
    d_w = agg.T @ dz
    d_b = dz.sum(axis=0)
    d_agg = dz @ params.weight.T
    d_msg = d_agg[center] * norm[:, None]
    dh = np.zeros_like(h)
    if t is None:
        np.add.at(dh, nbr, d_msg)
        trans_grads = None
    else:
        np.add.at(dh, nbr, t * d_msg)
        dt = d_msg * h[nbr]
        trans_grads = trans_backward(params.trans, tcache, dt)
    grads = GcnLayerParams(d_w, d_b, trans_grads)
    return dh, grads


def plugin_mpnn_forward(base, params, g, h, coeffs=None):
    """Base aggregation with messages pre-multiplied by Trans weights.

    base is "gcn" (symmetric-degree-normalized sum, linear + ReLU) or "gin"
    ((1 + eps) self term plus sum, then MLP).  With unit weights (no Trans)
    this is exactly the unmodified base layer.
    """
    if base == "gcn":
        return gcn_layer_forward(params, g, h, coeffs)
    if base == "gin":
        return union_layer_forward(params, g, h, coeffs)
    raise GraphError(f"unknown base layer {base!r}")


def plugin_mpnn_backward(base, params, cache, dout):
    if base == "gcn":
        return gcn_layer_backward(params, cache, dout)
    if base == "gin":
        return union_layer_backward(params, cache, dout)
    raise GraphError(f"unknown base layer {base!r}")


# ---------------------------------------------------------------------------
# Attention with coefficient bias
# ---------------------------------------------------------------------------

@dataclass
class AttentionParams:
    wq: np.ndarray
    wk: np.ndarray
    trans: Mlp  # shared across layers; output reduced per pair by channel mean

    def arrays(self):
        return [self.wq, self.wk] + self.trans.arrays()


def attention_params(dim, rng):
    return AttentionParams(
        glorot_uniform(rng, dim, dim),
        glorot_uniform(rng, dim, dim),
        mlp_init((1, TRANS_HIDDEN, dim), rng),
    )


def attention_bias_forward(params, g, h, coeffs):
    """A_vu = (h_v Wq)(h_u Wk)^T / sqrt(d) + mean(Trans(coeff_vu)).

    The bias applies to adjacent ordered pairs only; elsewhere it is zero.
    Returns the full attention logit matrix.
    """
    n, d = h.shape
    if params.wq.shape != (d, d) or params.wk.shape != (d, d):
        raise GraphError("Wq and Wk must be d x d for d-channel features")
    q = h @ params.wq
    k = h @ params.wk
    scores = (q @ k.T) / math.sqrt(d)
    t, (center, nbr, seg), tcache = trans_forward(params.trans, g, coeffs)
    bias = np.zeros((n, n))
    bias[center, nbr] = t.mean(axis=1)
    return scores + bias, (g, h, q, k, center, nbr, t, tcache)


def attention_bias_backward(params, cache, dout):
    g, h, q, k, center, nbr, t, tcache = cache
    n, d = h.shape
    scale = 1.0 / math.sqrt(d)
    dq = dout @ k * scale
    dk = dout.T @ q * scale
    d_wq = h.T @ dq
    d_wk = h.T @ dk
    dh = dq @ params.wq.T + dk @ params.wk.T
    dt = np.repeat(dout[center, nbr][:, None], t.shape[1], axis=1) / t.shape[1]
    trans_grads = trans_backward(params.trans, tcache, dt)
    return dh, AttentionParams(d_wq, d_wk, trans_grads)


# ---------------------------------------------------------------------------
# Gradient checking
# ---------------------------------------------------------------------------

def grad_check(loss_and_grads, arrays, step=1e-5):
    """Max relative error between analytic and central-difference gradients.

    ``loss_and_grads()`` returns (loss, grad arrays aligned with ``arrays``);
    ``loss_and_grads(value_only=True)`` returns just the loss at the current
    parameter values.  Arrays are perturbed in place.
    """
    loss, grads = loss_and_grads()
    if not np.isfinite(loss):
        raise GraphError("loss is not finite")
    worst = 0.0
    for arr, grad in zip(arrays, grads):
        flat = arr.reshape(-1)
        gflat = np.asarray(grad).reshape(-1)
        if not np.isfinite(gflat).all():
            raise GraphError("analytic gradient is not finite")
        for idx in range(flat.size):
            orig = flat[idx]
            flat[idx] = orig + step
            up = loss_and_grads(value_only=True)
            flat[idx] = orig - step
            down = loss_and_grads(value_only=True)
            flat[idx] = orig
            fd = (up - down) / (2.0 * step)
            ga = gflat[idx]
            rel = abs(ga - fd) / max(1.0, abs(ga), abs(fd))
            worst = max(worst, rel)
    return worst


def pooled_mse_head(forward, backward, target):
    """Wrap a layer in a mean-pool + MSE loss for gradient checking.

    ``forward()`` -> (out, cache); ``backward(cache, dout)`` -> grads list.
    """

    def loss_and_grads(value_only=False):
        out, cache = forward()
        pooled = out.mean(axis=0)
        diff = pooled - target
        loss = float((diff * diff).mean())
        if value_only:
            return loss
        dpooled = 2.0 * diff / diff.size
        dout = np.tile(dpooled / out.shape[0], (out.shape[0], 1))
        grads = backward(cache, dout)
        return loss, grads

    return loss_and_grads


# ---------------------------------------------------------------------------
# Adam
# ---------------------------------------------------------------------------

@dataclass
class Adam:
    """Standard Adam over a fixed list of parameter arrays (updated in place)."""

    arrays: list
    lr: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    step_count: int = 0
    m: list = field(default_factory=list)
    v: list = field(default_factory=list)

    def __post_init__(self):
        self.m = [np.zeros_like(a) for a in self.arrays]
        self.v = [np.zeros_like(a) for a in self.arrays]

    def step(self, grads):
        self.step_count += 1
        b1, b2 = self.beta1, self.beta2
        correction = math.sqrt(1 - b2 ** self.step_count) / (1 - b1 ** self.step_count)
        for a, g, m, v in zip(self.arrays, grads, self.m, self.v):
            g = np.asarray(g)
            m *= b1
            m += (1 - b1) * g
            v *= b2
            v += (1 - b2) * (g * g)
            a -= self.lr * correction * m / (np.sqrt(v) + self.eps)


# ---------------------------------------------------------------------------
# Graph classifier (2 layers + mean pool + linear head)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModelSpec:
    """Which base layer to stack and whether coefficients are injected."""

    base: str  # "gcn" or "gin"
    use_coeffs: bool
    hidden: int = 16
    descriptor: object = UNION_PATH_SVD
    encoding: Encoding = Encoding.SVD_SUM

    NAMES = ("gcn", "gin", "union-gcn", "union-gin", "union")

    @classmethod
    def parse(cls, name, hidden=16):
        if name == "gcn":
            return cls("gcn", False, hidden)
        if name == "gin":
            return cls("gin", False, hidden)
        if name == "union-gcn":
            return cls("gcn", True, hidden)
        if name in ("union-gin", "union"):
            return cls("gin", True, hidden)
        raise GraphError(f"unknown model {name!r} (choose from {cls.NAMES})")


@dataclass
class Classifier:
    spec: ModelSpec
    layers: list
    head_w: np.ndarray
    head_b: np.ndarray

    def arrays(self):
        out = []
        for layer in self.layers:
            out += layer.arrays()
        out += [self.head_w, self.head_b]
        return out


def init_classifier(spec, in_dim, num_classes, rng):
    dims = [in_dim, spec.hidden, spec.hidden]
    layers = []
    for i in range(2):
        if spec.base == "gcn":
            layers.append(
                gcn_layer_params(dims[i], dims[i + 1], rng, with_trans=spec.use_coeffs)
            )
        else:
            layers.append(
                union_layer_params(
                    dims[i], dims[i + 1], rng, with_trans=spec.use_coeffs
                )
            )
    head_w = glorot_uniform(rng, spec.hidden, num_classes)
    head_b = np.zeros(num_classes)
    return Classifier(spec, layers, head_w, head_b)


def classifier_forward(model, g, coeffs):
    h = g.feature_matrix()
    caches = []
    for layer in model.layers:
        h, cache = plugin_mpnn_forward(model.spec.base, layer, g, h, coeffs)
        caches.append(cache)
    pooled = h.mean(axis=0)
    logits = pooled @ model.head_w + model.head_b
    return logits, (caches, h.shape[0], pooled)


def classifier_backward(model, cache, dlogits):
    caches, num_nodes, pooled = cache
    d_head_w = np.outer(pooled, dlogits)
    d_head_b = dlogits.copy()
    dpooled = model.head_w @ dlogits
    dh = np.tile(dpooled / num_nodes, (num_nodes, 1))
    layer_grads = []
    for layer, layer_cache in zip(reversed(model.layers), reversed(caches)):
        dh, grads = plugin_mpnn_backward(model.spec.base, layer, layer_cache, dh)
        layer_grads.append(grads)
    layer_grads.reverse()
    out = []
    for grads in layer_grads:
        out += grads.arrays()
    out += [d_head_w, d_head_b]
    return out


def cross_entropy(logits, label):
    shifted = logits - logits.max()
    logsumexp = math.log(np.exp(shifted).sum())
    loss = logsumexp - shifted[label]
    probs = np.exp(shifted - logsumexp)
    dlogits = probs
    dlogits[label] -= 1.0
    return float(loss), dlogits


def evaluate(model, dataset, coeff_cache):
    if not dataset:
        return 0.0
    hits = 0
    for i, (g, label) in enumerate(dataset):
        logits, _ = classifier_forward(model, g, coeff_cache[i])
        hits += int(np.argmax(logits) == label)
    return hits / len(dataset)


@dataclass
class TrainReport:
    model: Classifier
    train_acc: float
    val_acc: float
    test_acc: float
    loss_curve: list  # (epoch, train_loss, val_acc)


def _coeff_tables(spec, dataset):
    if not spec.use_coeffs:
        return [None] * len(dataset)
    return [
        coefficient_table(g, spec.descriptor, spec.encoding) for g, _ in dataset
    ]


# ---------------------------------------------------------------------------
# Batched training engine (disjoint-union vectorization)
# ---------------------------------------------------------------------------
# Training stacks a batch of graphs as one disjoint union so each epoch is a
# handful of array ops instead of thousands of tiny ones.  The per-graph layer
# functions above stay the reference semantics; tests pin the two paths to
# each other.

class _PreparedGraph:
    """Cached wiring arrays for one (graph, coefficient-table) pair."""

    __slots__ = ("num_nodes", "center", "nbr", "norm", "coeff", "features")

    def __init__(self, g, coeffs):
        self.num_nodes = g.num_nodes
        center, nbr, _ = directed_pairs(g)
        self.center = center
        self.nbr = nbr
        degs = np.array(
            [max(1, g.degree(v)) for v in range(g.num_nodes)], dtype=float
        )
        self.norm = 1.0 / np.sqrt(degs[center] * degs[nbr])
        self.features = g.feature_matrix()
        if coeffs is None:
            self.coeff = None
        else:
            self.coeff = np.array(
                [[coeffs.normalized[(int(v), int(u))]] for v, u in zip(center, nbr)]
            )


class _Batch:
    """A disjoint union of prepared graphs with offset pair/node indexing.

    Pair arrays are sorted by center node (within and across graphs), so
    per-node segments are contiguous runs usable with reduceat.
    """

    __slots__ = (
        "h0", "center", "nbr", "norm", "coeff", "num_nodes",
        "node_sizes", "pool_starts", "seg_starts", "seg_expand",
    )

    def __init__(self, prepared):
        offsets = np.cumsum([0] + [p.num_nodes for p in prepared])
        self.num_nodes = int(offsets[-1])
        self.h0 = np.concatenate([p.features for p in prepared], axis=0)
        self.center = np.concatenate(
            [p.center + off for p, off in zip(prepared, offsets)]
        ).astype(int)
        self.nbr = np.concatenate(
            [p.nbr + off for p, off in zip(prepared, offsets)]
        ).astype(int)
        self.norm = np.concatenate([p.norm for p in prepared])
        if prepared[0].coeff is not None:
            self.coeff = np.concatenate([p.coeff for p in prepared], axis=0)
        else:
            self.coeff = None
        self.node_sizes = np.array([p.num_nodes for p in prepared], dtype=float)
        self.pool_starts = offsets[:-1]
        # contiguous runs of equal center: segment starts and per-pair run ids
        change = np.nonzero(np.diff(self.center))[0] + 1
        self.seg_starts = np.concatenate([[0], change])
        counts = np.diff(np.concatenate([self.seg_starts, [len(self.center)]]))
        self.seg_expand = np.repeat(np.arange(len(self.seg_starts)), counts)


def _scatter_rows(values, index, num_rows):
    """Row-wise scatter-add via bincount per channel (fast, deterministic)."""
    out = np.empty((num_rows, values.shape[1]))
    for c in range(values.shape[1]):
        out[:, c] = np.bincount(index, weights=values[:, c], minlength=num_rows)
    return out


def _segment_softmax(z, batch):
    """Softmax of z rows grouped by center node, per channel."""
    big = np.maximum.reduceat(z, batch.seg_starts, axis=0)
    e = np.exp(z - big[batch.seg_expand])
    sums = np.add.reduceat(e, batch.seg_starts, axis=0)
    return e / sums[batch.seg_expand]


def _segment_softmax_backward(t, dt, batch):
    inner = np.add.reduceat(dt * t, batch.seg_starts, axis=0)
    return t * (dt - inner[batch.seg_expand])


def _batched_trans(trans, batch):
    z, mlp_cache = mlp_forward(trans, batch.coeff)
    t = _segment_softmax(z, batch)
    return t, (mlp_cache, t)


def _batched_forward(model, batch):
    h = batch.h0
    caches = []
    for layer in model.layers:
        if layer.trans is not None:
            t, tcache = _batched_trans(layer.trans, batch)
        else:
            t, tcache = None, None
        if model.spec.base == "gcn":
            msg = h[batch.nbr] * batch.norm[:, None]
            if t is not None:
                msg = msg * t
            agg = _scatter_rows(msg, batch.center, batch.num_nodes)
            z = agg @ layer.weight + layer.bias
            new_h = np.maximum(z, 0.0)
            caches.append(("gcn", h, t, tcache, agg, z))
        else:
            msg = h[batch.nbr] if t is None else t * h[batch.nbr]
            agg = (1.0 + float(layer.epsilon)) * h
            agg += _scatter_rows(msg, batch.center, batch.num_nodes)
            new_h, mlp_cache = mlp_forward(layer.mlp, agg)
            caches.append(("gin", h, t, tcache, mlp_cache))
        h = new_h
    pooled = np.add.reduceat(h, batch.pool_starts, axis=0)
    pooled /= batch.node_sizes[:, None]
    logits = pooled @ model.head_w + model.head_b
    return logits, (caches, h, pooled)


def _batched_backward(model, batch, cache, dlogits):
    caches, h_last, pooled = cache
    d_head_w = pooled.T @ dlogits
    d_head_b = dlogits.sum(axis=0)
    dpooled = dlogits @ model.head_w.T
    dh = np.repeat(
        dpooled / batch.node_sizes[:, None], batch.node_sizes.astype(int), axis=0
    )
    layer_grads = []
    for layer, layer_cache in zip(reversed(model.layers), reversed(caches)):
        kind = layer_cache[0]
        if kind == "gcn":
            _, h_in, t, tcache, agg, z = layer_cache
            dz = dh * (z > 0)
            d_w = agg.T @ dz
            d_b = dz.sum(axis=0)
            d_agg = dz @ layer.weight.T
            d_msg = d_agg[batch.center] * batch.norm[:, None]
            dh = np.zeros_like(h_in)
            if t is None:
                np.add.at(dh, batch.nbr, d_msg)
                trans_grads = None
            else:
                np.add.at(dh, batch.nbr, t * d_msg)
                dt = d_msg * h_in[batch.nbr]
                dz_t = _segment_softmax_backward(t, dt, batch)
                _, trans_grads = mlp_backward(layer.trans, tcache[0], dz_t)
            layer_grads.append(GcnLayerParams(d_w, d_b, trans_grads))
        else:
            _, h_in, t, tcache, mlp_cache = layer_cache
            d_agg, mlp_grads = mlp_backward(layer.mlp, mlp_cache, dh)
            d_eps = np.array(float((d_agg * h_in).sum()))
            dh = (1.0 + float(layer.epsilon)) * d_agg
            d_msg = d_agg[batch.center]
            if t is None:
                np.add.at(dh, batch.nbr, d_msg)
                trans_grads = None
            else:
                np.add.at(dh, batch.nbr, t * d_msg)
                dt = d_msg * h_in[batch.nbr]
                dz_t = _segment_softmax_backward(t, dt, batch)
                _, trans_grads = mlp_backward(layer.trans, tcache[0], dz_t)
            layer_grads.append(UnionLayerParams(d_eps, mlp_grads, trans_grads))
    layer_grads.reverse()
    out = []
    for grads in layer_grads:
        out += grads.arrays()
    out += [d_head_w, d_head_b]
    return out


def _batched_cross_entropy(logits, labels):
    shifted = logits - logits.max(axis=1, keepdims=True)
    logsumexp = np.log(np.exp(shifted).sum(axis=1, keepdims=True))
    probs = np.exp(shifted - logsumexp)
    losses = logsumexp[:, 0] - shifted[np.arange(len(labels)), labels]
    dlogits = probs
    dlogits[np.arange(len(labels)), labels] -= 1.0
    return losses, dlogits


def _batched_accuracy(model, prepared, labels, chunk=256):
    if not prepared:
        return 0.0
    hits = 0
    for start in range(0, len(prepared), chunk):
        batch = _Batch(prepared[start : start + chunk])
        logits, _ = _batched_forward(model, batch)
        hits += int((np.argmax(logits, axis=1) == labels[start : start + chunk]).sum())
    return hits / len(prepared)


def train_classifier(
    train, val, test, spec, epochs, seed, lr=1e-3, batch_size=32, num_classes=2
):
    """Train the 2-layer classifier with Adam; deterministic given the seed.

    Labels must lie in 0..num_classes-1.  Returns a TrainReport; with
    epochs=0 the untrained model is evaluated directly.
    """
    if not train:
        raise GraphError("empty training dataset")
    for _, label in list(train) + list(val) + list(test):
        if not 0 <= label < num_classes:
            raise GraphError(f"label {label} outside 0..{num_classes - 1}")
    rng = np.random.default_rng(seed)
    in_dim = train[0][0].feature_matrix().shape[1]
    model = init_classifier(spec, in_dim, num_classes, rng)
    prep = {
        name: [
            _PreparedGraph(g, c)
            for (g, _), c in zip(split, _coeff_tables(spec, split))
        ]
        for name, split in (("train", train), ("val", val), ("test", test))
    }
    labels = {
        name: np.array([label for _, label in split], dtype=int)
        for name, split in (("train", train), ("val", val), ("test", test))
    }
    arrays = model.arrays()
    adam = Adam(arrays, lr=lr)
    curve = []
    for epoch in range(epochs):
        order = rng.permutation(len(train))
        epoch_loss = 0.0
        for start in range(0, len(order), batch_size):
            idx = order[start : start + batch_size]
            batch = _Batch([prep["train"][i] for i in idx])
            logits, cache = _batched_forward(model, batch)
            losses, dlogits = _batched_cross_entropy(logits, labels["train"][idx])
            epoch_loss += float(losses.sum())
            grads = _batched_backward(model, batch, cache, dlogits / len(idx))
            adam.step(grads)
        val_acc = _batched_accuracy(model, prep["val"], labels["val"])
        curve.append((epoch + 1, epoch_loss / len(train), val_acc))
    return TrainReport(
        model=model,
        train_acc=_batched_accuracy(model, prep["train"], labels["train"]),
        val_acc=_batched_accuracy(model, prep["val"], labels["val"]),
        test_acc=_batched_accuracy(model, prep["test"], labels["test"]),
        loss_curve=curve,
    )


# ---------------------------------------------------------------------------
# Checkpoint serialization
# ---------------------------------------------------------------------------

def params_to_json_obj(model):
    return {
        "model": {
            "base": model.spec.base,
            "use_coeffs": model.spec.use_coeffs,
            "hidden": model.spec.hidden,
        },
        "arrays": [
            {"shape": list(a.shape), "data": np.asarray(a).ravel().tolist()}
            for a in model.arrays()
        ],
    }


def load_params_into(model, obj):
    arrays = model.arrays()
    stored = obj["arrays"]
    if len(arrays) != len(stored):
        raise GraphError("checkpoint does not match the model architecture")
    for a, item in zip(arrays, stored):
        data = np.array(item["data"]).reshape(item["shape"])
        if tuple(a.shape) != tuple(data.shape):
            raise GraphError("checkpoint array shape mismatch")
        a[...] = data
    return model
