"""Topological classification of weighted networks.

Networks are reduced to sorted component-birth and cycle-death values by an
edge-weight filtration, embedded in a vector space whose p-norm reproduces
the corresponding transport distances, and classified with a linear SVM
under stratified nested cross-validation and permutation testing.
"""

__version__ = "0.1.0"

from .barcode import (
    BettiCurve,
    BirthDeathDecomposition,
    betti_curves,
    counts_for_size,
    decompose,
)
from .classify import (
    CVReport,
    LabeledDataset,
    PermutationReport,
    SvmModel,
    nested_cv,
    permutation_test,
    stratified_folds,
    svm_predict,
    svm_train,
)
from .embed import TopologicalVector, embed, embed_dataset, reconstruct_barcode
from .graph import (
    ManifestEntry,
    WeightedNetwork,
    from_adjacency_text,
    from_edge_list,
    load_dataset,
    load_manifest,
    read_edge_list_csv,
    read_network,
    to_adjacency_text,
    write_edge_list_csv,
)
from .simulate import ModularSpec, generate, generate_benchmark, module_assignment
from .wasserstein import (
    barcode_mean,
    ot_oracle,
    product_metric,
    pseudoinverse_sample,
    wasserstein_approx,
    wasserstein_exact,
)

__all__ = [
    "__version__",
    "BettiCurve",
    "BirthDeathDecomposition",
    "CVReport",
    "LabeledDataset",
    "ManifestEntry",
    "ModularSpec",
    "PermutationReport",
    "SvmModel",
    "TopologicalVector",
    "WeightedNetwork",
    "barcode_mean",
    "betti_curves",
    "counts_for_size",
    "decompose",
    "embed",
    "embed_dataset",
    "from_adjacency_text",
    "from_edge_list",
    "generate",
    "generate_benchmark",
    "load_dataset",
    "load_manifest",
    "module_assignment",
    "nested_cv",
    "ot_oracle",
    "permutation_test",
    "product_metric",
    "pseudoinverse_sample",
    "read_edge_list_csv",
    "read_network",
    "reconstruct_barcode",
    "stratified_folds",
    "svm_predict",
    "svm_train",
    "to_adjacency_text",
    "wasserstein_approx",
    "wasserstein_exact",
    "write_edge_list_csv",
]
