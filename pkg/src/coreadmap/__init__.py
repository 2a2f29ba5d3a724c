"""coreadmap: map a research field from co-readership in user libraries."""

from .corpus import (
    Corpus,
    Document,
    SubjectTaxonomy,
    UserLibrary,
    load_corpus,
    load_taxonomy,
    match_journal,
    normalize_journal,
)
from .cooccur import CoOccurrenceMatrix, SelectionConfig, build_cooccurrence, select_documents
from .simcluster import (
    ClusterSolution,
    SimilarityModel,
    choose_k_elbow,
    euclidean_from_correlations,
    impute_missing_distances,
    pearson_pairwise,
    purity,
    solve_clusters,
    ward_hac,
)
from .ordination import Embedding, nmds, shepard_data
from .labeling import LabelCandidate, label_cluster
from .layout import DomainMap, TopicArea, export_map, load_map, make_areas, settle_documents
from .stats import (
    age_type_stats,
    country_distribution,
    library_size_stats,
    subject_distribution,
)

__version__ = "0.1.0"

__all__ = [
    "Corpus",
    "Document",
    "SubjectTaxonomy",
    "UserLibrary",
    "load_corpus",
    "load_taxonomy",
    "match_journal",
    "normalize_journal",
    "CoOccurrenceMatrix",
    "SelectionConfig",
    "build_cooccurrence",
    "select_documents",
    "ClusterSolution",
    "SimilarityModel",
    "choose_k_elbow",
    "euclidean_from_correlations",
    "impute_missing_distances",
    "pearson_pairwise",
    "purity",
    "solve_clusters",
    "ward_hac",
    "Embedding",
    "nmds",
    "shepard_data",
    "LabelCandidate",
    "label_cluster",
    "DomainMap",
    "TopicArea",
    "export_map",
    "load_map",
    "make_areas",
    "settle_documents",
    "age_type_stats",
    "country_distribution",
    "library_size_stats",
    "subject_distribution",
]
