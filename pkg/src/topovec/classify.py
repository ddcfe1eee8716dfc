"""Linear soft-margin SVM, stratified nested CV, and the permutation test.

The SVM solves the equality-constrained hinge-loss dual by sequential
minimal optimization (pairwise coordinate updates with second-order
working-set selection and a true, unregularized bias), stopping when the
maximal KKT violation gap drops below 1e-4 or after an iteration budget of
1000 passes. Training is deterministic given the data order. Multiclass
problems are reduced one-vs-rest; prediction is the argmax of per-class
scores with ties broken toward the lexicographically smallest class name.

Cross-validation folds are stratified: indices of each class are shuffled
by a seeded stream and dealt round-robin, so per-fold class proportions
deviate from the global ones by at most one sample per class. All reported
numbers are bit-reproducible from (data, seed, grid).
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._kernels import smo_hinge
from .embed import TopologicalVector
from .rng import stream

KKT_TOL = 1e-4
EPOCH_LIMIT = 1000

# Stream indices: nested CV uses (seed, fold index) in [0, outer_folds];
# permutation trials live in a disjoint range.
_PERM_STREAM_BASE = 1 << 32


@dataclass(frozen=True)
class LabeledDataset:
    """Vectors sharing one reference size, with a class label per vector."""

    vectors: tuple[TopologicalVector, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        vectors = tuple(self.vectors)
        labels = tuple(str(lbl) for lbl in self.labels)
        if len(vectors) != len(labels):
            raise ValueError(
                f"{len(vectors)} vectors but {len(labels)} labels"
            )
        if not vectors:
            raise ValueError("dataset is empty")
        ref_size = vectors[0].ref_size
        for v in vectors[1:]:
            if v.ref_size != ref_size:
                raise ValueError("all vectors must share one reference size")
        counts: dict[str, int] = {}
        for lbl in labels:
            counts[lbl] = counts.get(lbl, 0) + 1
        if len(counts) < 2:
            raise ValueError("dataset needs at least 2 distinct labels")
        for lbl, count in sorted(counts.items()):
            if count < 2:
                raise ValueError(
                    f"class {lbl!r} has only {count} member; stratified "
                    "splitting needs at least 2 per class"
                )
        object.__setattr__(self, "vectors", vectors)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_networks(cls, networks, labels, ref_size=None) -> "LabeledDataset":
        from .embed import embed_dataset

        return cls(vectors=tuple(embed_dataset(networks, ref_size)), labels=tuple(labels))

    @property
    def ref_size(self) -> int:
        return self.vectors[0].ref_size

    def feature_matrix(self) -> np.ndarray:
        return np.stack([v.concatenated() for v in self.vectors])


@dataclass(frozen=True, eq=False)
class SvmModel:
    """One-vs-rest linear SVM over the concatenated feature space."""

    classes: tuple[str, ...]
    weights: np.ndarray  # (n_classes, n_features)
    biases: np.ndarray  # (n_classes,)
    C: float
    ref_size: int
    objective_histories: tuple[np.ndarray, ...]  # dual objective per epoch, per class


@dataclass(frozen=True, eq=False)
class CVReport:
    """Nested cross-validation outcome."""

    accuracy: float
    fold_accuracies: tuple[float, ...]
    chosen_c: tuple[float, ...]
    classes: tuple[str, ...]
    confusion: np.ndarray  # rows: true class, row-normalized
    outer_folds: int
    inner_folds: int
    c_grid: tuple[float, ...]
    seed: int
    standardized: bool = False

    def __post_init__(self):
        if abs(self.accuracy - float(np.mean(self.fold_accuracies))) > 1e-12:
            raise ValueError("accuracy must equal the mean of outer-fold accuracies")
        confusion = np.asarray(self.confusion, dtype=float)
        if np.any(np.abs(confusion.sum(axis=1) - 1.0) > 1e-9):
            raise ValueError("confusion matrix rows must sum to 1")
        confusion.setflags(write=False)
        object.__setattr__(self, "confusion", confusion)


@dataclass(frozen=True)
class PermutationReport:
    """Label-shuffling significance test outcome."""

    observed_accuracy: float
    permutation_accuracies: tuple[float, ...]
    p_value: float
    permutation_count: int
    rng_seed: int

    def __post_init__(self):
        if self.permutation_count != len(self.permutation_accuracies):
            raise ValueError("permutation_count must match the accuracy list length")
        exceed = sum(a > self.observed_accuracy for a in self.permutation_accuracies)
        if self.p_value != exceed / self.permutation_count:
            raise ValueError("p_value must be the fraction of strictly higher accuracies")


def _kernel_matrix(features: np.ndarray) -> np.ndarray:
    return features @ features.T


def _fit_class_coefs(kernel, labels, train_idx, classes, c):
    """Fit one-vs-rest dual coefficients alpha_i * y_i on a training subset."""
    sub = np.ascontiguousarray(kernel[np.ix_(train_idx, train_idx)])
    coefs = np.empty((len(classes), train_idx.size))
    biases = np.empty(len(classes))
    for k, cls in enumerate(classes):
        y = np.where(labels[train_idx] == cls, 1.0, -1.0)
        alpha, bias, _ = smo_hinge(sub, y, float(c), KKT_TOL, EPOCH_LIMIT)
        coefs[k] = alpha * y
        biases[k] = bias
    return coefs, biases


def _predict_from_coefs(kernel, coefs, biases, train_idx, test_idx, classes):
    scores = coefs @ kernel[np.ix_(train_idx, test_idx)] + biases[:, np.newaxis]
    return [classes[k] for k in np.argmax(scores, axis=0)]


def svm_train(data: LabeledDataset, C: float) -> SvmModel:
    """Train a one-vs-rest linear SVM on the whole dataset."""
    if C <= 0:
        raise ValueError("C must be positive")
    classes = tuple(sorted(set(data.labels)))
    if len(classes) < 2:
        raise ValueError("training requires at least 2 distinct classes")
    features = data.feature_matrix()
    labels = np.asarray(data.labels)
    kernel = np.ascontiguousarray(_kernel_matrix(features))
    weights = np.empty((len(classes), features.shape[1]))
    biases = np.empty(len(classes))
    histories = []
    for k, cls in enumerate(classes):
        y = np.where(labels == cls, 1.0, -1.0)
        alpha, bias, history = smo_hinge(kernel, y, float(C), KKT_TOL, EPOCH_LIMIT)
        coef = alpha * y
        weights[k] = coef @ features
        biases[k] = bias
        histories.append(history)
    weights.setflags(write=False)
    biases.setflags(write=False)
    return SvmModel(
        classes=classes,
        weights=weights,
        biases=biases,
        C=float(C),
        ref_size=data.ref_size,
        objective_histories=tuple(histories),
    )


def svm_predict(model: SvmModel, vec: TopologicalVector) -> str:
    """Predict the class of one vector."""
    if vec.ref_size != model.ref_size:
        raise ValueError(
            f"vector reference size {vec.ref_size} does not match the model's "
            f"{model.ref_size}"
        )
    x = vec.concatenated()
    if x.size != model.weights.shape[1]:
        raise ValueError("feature dimension mismatch")
    scores = model.weights @ x + model.biases
    return model.classes[int(np.argmax(scores))]


def stratified_folds(labels, n_folds: int, rng: np.random.Generator):
    """Shuffle each class with rng, deal round-robin; returns index arrays."""
    labels = np.asarray(labels)
    folds: list[list[int]] = [[] for _ in range(n_folds)]
    for cls in sorted(set(labels.tolist())):
        idx = np.flatnonzero(labels == cls)
        idx = idx[rng.permutation(idx.size)]
        for t, sample in enumerate(idx.tolist()):
            folds[t % n_folds].append(sample)
    return [np.array(sorted(f), dtype=np.intp) for f in folds]


def _check_class_counts(labels, n_folds, where):
    labels_list = labels.tolist()
    for cls in sorted(set(labels_list)):
        count = labels_list.count(cls)
        if count < n_folds:
            raise ValueError(
                f"class {cls!r} has {count} members in the {where} split; "
                f"stratified {n_folds}-fold CV needs at least {n_folds}"
            )


def _run_nested_cv(kernel, labels, outer_folds, inner_folds, c_grid, seed, threads,
                   standardized=False) -> CVReport:
    classes = tuple(sorted(set(labels.tolist())))
    _check_class_counts(labels, outer_folds, "outer")
    outer = stratified_folds(labels, outer_folds, stream(seed, 0))
    all_idx = np.arange(labels.size)

    fold_accuracies = []
    chosen_c = []
    class_pos = {cls: k for k, cls in enumerate(classes)}
    confusion_counts = np.zeros((len(classes), len(classes)))

    for f, test_idx in enumerate(outer):
        train_idx = np.setdiff1d(all_idx, test_idx)
        _check_class_counts(labels[train_idx], inner_folds, "inner")
        inner = stratified_folds(labels[train_idx], inner_folds, stream(seed, f + 1))
        train_positions = np.arange(train_idx.size)

        def inner_mean_accuracy(c):
            accs = []
            for val_rel in inner:
                fit_idx = train_idx[np.setdiff1d(train_positions, val_rel)]
                val_idx = train_idx[val_rel]
                coefs, biases = _fit_class_coefs(kernel, labels, fit_idx, classes, c)
                pred = _predict_from_coefs(kernel, coefs, biases, fit_idx, val_idx, classes)
                accs.append(float(np.mean([p == t for p, t in zip(pred, labels[val_idx])])))
            return float(np.mean(accs))

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                grid_scores = list(pool.map(inner_mean_accuracy, c_grid))
        else:
            grid_scores = [inner_mean_accuracy(c) for c in c_grid]
        best_c = min(zip(grid_scores, c_grid), key=lambda t: (-t[0], t[1]))[1]
        chosen_c.append(float(best_c))

        coefs, biases = _fit_class_coefs(kernel, labels, train_idx, classes, best_c)
        pred = _predict_from_coefs(kernel, coefs, biases, train_idx, test_idx, classes)
        truth = labels[test_idx]
        fold_accuracies.append(float(np.mean([p == t for p, t in zip(pred, truth)])))
        for p, t in zip(pred, truth):
            confusion_counts[class_pos[t], class_pos[p]] += 1.0

    confusion = confusion_counts / confusion_counts.sum(axis=1, keepdims=True)
    return CVReport(
        accuracy=float(np.mean(fold_accuracies)),
        fold_accuracies=tuple(fold_accuracies),
        chosen_c=tuple(chosen_c),
        classes=classes,
        confusion=confusion,
        outer_folds=outer_folds,
        inner_folds=inner_folds,
        c_grid=tuple(float(c) for c in c_grid),
        seed=int(seed),
        standardized=standardized,
    )


def _prepare_features(data: LabeledDataset, standardize: bool) -> np.ndarray:
    features = data.feature_matrix()
    if standardize:
        scale = features.std(axis=0)
        scale[scale == 0.0] = 1.0
        features = (features - features.mean(axis=0)) / scale
    return features


def nested_cv(
    data: LabeledDataset,
    outer_folds: int,
    inner_folds: int,
    c_grid,
    seed: int,
    threads: int = 1,
    standardize: bool = False,
) -> CVReport:
    """Stratified nested cross-validation with an inner grid search over C.

    The inner loop picks the C with the highest mean inner-fold accuracy,
    breaking ties toward the smallest C; the outer loop averages test-fold
    accuracies of models retrained with the chosen C.
    """
    if outer_folds < 2 or inner_folds < 2:
        raise ValueError("outer_folds and inner_folds must be at least 2")
    c_grid = tuple(float(c) for c in c_grid)
    if not c_grid or any(c <= 0 for c in c_grid):
        raise ValueError("c_grid must be a nonempty list of positive values")
    features = _prepare_features(data, standardize)
    kernel = _kernel_matrix(features)
    labels = np.asarray(data.labels)
    return _run_nested_cv(
        kernel, labels, int(outer_folds), int(inner_folds), c_grid, int(seed),
        int(threads), standardized=standardize,
    )


def permutation_test(
    data: LabeledDataset,
    trials: int,
    seed: int,
    outer_folds: int = 2,
    inner_folds: int = 5,
    c_grid=(0.01, 1.0, 100.0),
    threads: int = 1,
    standardize: bool = False,
) -> PermutationReport:
    """Compare observed nested CV accuracy against label-shuffled reruns.

    Each trial uses its own (seed, trial) stream to permute the labels and
    to draw the fold seed of its nested CV, so trials are independent of
    execution order. The p-value is the fraction of trials whose accuracy
    strictly exceeds the observed accuracy.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if outer_folds < 2 or inner_folds < 2:
        raise ValueError("outer_folds and inner_folds must be at least 2")
    c_grid = tuple(float(c) for c in c_grid)
    if not c_grid or any(c <= 0 for c in c_grid):
        raise ValueError("c_grid must be a nonempty list of positive values")

    features = _prepare_features(data, standardize)
    kernel = _kernel_matrix(features)
    labels = np.asarray(data.labels)

    observed = _run_nested_cv(
        kernel, labels, outer_folds, inner_folds, c_grid, int(seed), threads,
        standardized=standardize,
    ).accuracy

    def run_trial(t: int) -> float:
        rng = stream(seed, _PERM_STREAM_BASE + t)
        shuffled = labels[rng.permutation(labels.size)]
        cv_seed = int(rng.integers(0, 2**63 - 1))
        return _run_nested_cv(
            kernel, shuffled, outer_folds, inner_folds, c_grid, cv_seed, 1,
            standardized=standardize,
        ).accuracy

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            accuracies = list(pool.map(run_trial, range(trials)))
    else:
        accuracies = [run_trial(t) for t in range(trials)]

    exceed = sum(a > observed for a in accuracies)
    return PermutationReport(
        observed_accuracy=observed,
        permutation_accuracies=tuple(accuracies),
        p_value=exceed / trials,
        permutation_count=int(trials),
        rng_seed=int(seed),
    )
