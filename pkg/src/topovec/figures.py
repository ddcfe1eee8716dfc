"""Matplotlib figure rendering for the CLI report paths."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def save_network_figure(net, path) -> None:
    fig, ax = plt.subplots(figsize=(5.5, 4.5))
    image = ax.imshow(net.weights, cmap="viridis", interpolation="nearest")
    fig.colorbar(image, ax=ax, label="edge weight")
    ax.set_xlabel("node")
    ax.set_ylabel("node")
    ax.set_title(f"weight matrix, {net.node_count} nodes")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_barcode_figure(decomposition, path) -> None:
    fig, ax = plt.subplots(figsize=(6, 2.8))
    ax.eventplot(
        [np.asarray(decomposition.deaths), np.asarray(decomposition.births)],
        lineoffsets=[0, 1],
        linelengths=0.8,
        colors=["C3", "C0"],
    )
    ax.set_yticks([0, 1])
    ax.set_yticklabels(["cycle deaths", "component births"])
    ax.set_xlabel("filtration value")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_betti_figure(curve, path) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.step(curve.thresholds, curve.beta0, where="post", label="components")
    ax.step(curve.thresholds, curve.beta1, where="post", label="cycles")
    ax.set_xlabel("threshold")
    ax.set_ylabel("count")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_confusion_figure(report, path) -> None:
    confusion = np.asarray(report.confusion)
    fig, ax = plt.subplots(figsize=(4.5, 4))
    image = ax.imshow(confusion, cmap="Blues", vmin=0.0, vmax=1.0)
    fig.colorbar(image, ax=ax)
    ticks = range(len(report.classes))
    ax.set_xticks(ticks)
    ax.set_xticklabels(report.classes)
    ax.set_yticks(ticks)
    ax.set_yticklabels(report.classes)
    ax.set_xlabel("predicted")
    ax.set_ylabel("true")
    for r in ticks:
        for c in ticks:
            color = "white" if confusion[r, c] > 0.5 else "black"
            ax.text(c, r, f"{confusion[r, c]:.2f}", ha="center", va="center", color=color)
    ax.set_title(f"accuracy {report.accuracy:.3f}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_permutation_figure(report, path) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.hist(report.permutation_accuracies, bins=20, color="C0", alpha=0.8,
            label="shuffled labels")
    ax.axvline(report.observed_accuracy, color="C3", linewidth=2,
               label=f"observed = {report.observed_accuracy:.3f}")
    ax.set_xlabel("nested CV accuracy")
    ax.set_ylabel("trials")
    ax.set_title(f"p = {report.p_value:.4g} over {report.permutation_count} permutations")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
