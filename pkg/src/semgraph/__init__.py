"""semgraph: WordNet 3.1 noun-taxonomy semantic measures and conversation
convergence/divergence analytics."""

from .cache import load_cache, save_cache
from .errors import (CacheError, ConstantsMismatchError, DatabaseFormatError,
                     IdenticalWordsError, PipelineError, SegmentationError,
                     SemgraphError, SessionError, TaxonomyStructureError,
                     UnknownWordError)
from .estimators import (ConversationSegmenter, MeasureAverager,
                         NounExtractor, TrendClassifier)
from .ideation import (DEFAULT_MEASURE, IdeationSession, SessionStore,
                       rank_candidates, resolve_noun)
from .measures import (IcContext, MeasureId, abstraction_level, all_measures,
                       average_pairwise_similarity, average_word_measure,
                       ic_synset, ic_word, measure_catalog, parse_measure,
                       polysemy, similarity, similarity_detail,
                       similarity_measures)
from .taxonomy import (DbConstants, Lexicon, SemanticNet, Taxonomy,
                       WORDNET31_REFERENCE, compute_constants, load,
                       load_database, precompute_stats, verify_constants)
from .textpipe import (NounSequence, Transcript, clean, extract_nouns,
                       singularize, split_sentences)
from .dynamics import (Segment, SegmentSeries, TrendReport, fit_trend,
                       measure_correlation, segment, series)

__version__ = "0.1.0"

__all__ = [
    "CacheError", "ConstantsMismatchError", "ConversationSegmenter",
    "DEFAULT_MEASURE", "DatabaseFormatError", "DbConstants", "IcContext",
    "IdeationSession", "IdenticalWordsError", "Lexicon", "MeasureAverager",
    "MeasureId", "NounExtractor", "NounSequence", "PipelineError", "Segment",
    "SegmentSeries", "SegmentationError", "SemanticNet", "SemgraphError",
    "SessionError", "SessionStore", "Taxonomy", "TaxonomyStructureError",
    "Transcript", "TrendClassifier", "TrendReport", "UnknownWordError",
    "WORDNET31_REFERENCE", "abstraction_level", "all_measures",
    "average_pairwise_similarity", "average_word_measure", "clean",
    "compute_constants", "extract_nouns", "fit_trend", "ic_synset", "ic_word",
    "load", "load_cache", "load_database", "measure_catalog",
    "measure_correlation", "parse_measure", "polysemy", "precompute_stats",
    "rank_candidates", "resolve_noun", "save_cache", "segment", "series",
    "similarity", "similarity_detail", "similarity_measures", "singularize",
    "split_sentences", "verify_constants",
]
