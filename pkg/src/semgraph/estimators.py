"""Scikit-learn style transformers wrapping the conversation pipeline.

The stages compose into a standard Pipeline:

    raw texts -> NounExtractor -> ConversationSegmenter -> MeasureAverager
              -> TrendClassifier

All stages are stateless (fit is a no-op recording input checks), expose
get_params/set_params for cloning and grid search, and never mutate inputs.
The loaded SemanticNet is passed as a constructor parameter like any other;
it is immutable and shared, not fitted.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin

from ._validation import (check_net, check_noun_sequences, check_positive_int,
                          check_texts)
from .dynamics import Segment, SegmentSeries, classify_slope, ols_line, segment, series
from .measures import all_measures, parse_measure
from .taxonomy import SemanticNet
from .textpipe import clean, extract_nouns


class _StatelessMixin:
    """These stages hold no fitted state; fit only validates inputs."""

    def __sklearn_is_fitted__(self) -> bool:
        return True


class NounExtractor(_StatelessMixin, BaseEstimator, TransformerMixin):
    """Clean raw transcripts and extract WordNet nouns.

    Parameters
    ----------
    net : SemanticNet
        Loaded database.
    mode : {"dictionary", "pretagged"}
        Dictionary mode resolves tokens against the noun lexicon; pretagged
        mode expects each document to be token<TAB>tag TSV.
    collocations : bool
        Join adjacent tokens into underscore collocations when the joined
        form is in the lexicon.
    """

    def __init__(self, net: SemanticNet = None, mode: str = "dictionary",
                 collocations: bool = False, stoplist=None):
        self.net = net
        self.mode = mode
        self.collocations = collocations
        self.stoplist = stoplist

    def fit(self, X, y=None):
        check_net(self.net)
        check_texts(X)
        return self

    def transform(self, X):
        check_net(self.net)
        X = check_texts(X)
        out = []
        for i, doc in enumerate(X):
            if self.mode == "pretagged":
                seq = extract_nouns(clean("", source_id=f"doc{i}"), self.net,
                                    mode="pretagged", pretagged=doc,
                                    stoplist=self.stoplist)
                seq.source_id = f"doc{i}"
            else:
                seq = extract_nouns(clean(doc, source_id=f"doc{i}"), self.net,
                                    mode=self.mode,
                                    collocations=self.collocations,
                                    stoplist=self.stoplist)
            out.append(seq)
        return out


class ConversationSegmenter(_StatelessMixin, BaseEstimator, TransformerMixin):
    """Split each noun sequence into n_segments time points."""

    def __init__(self, n_segments: int = 3):
        self.n_segments = n_segments

    def fit(self, X, y=None):
        check_positive_int(self.n_segments, "n_segments")
        return self

    def transform(self, X) -> list[list[Segment]]:
        check_positive_int(self.n_segments, "n_segments")
        return [segment(seq, self.n_segments)
                for seq in check_noun_sequences(X)]


class MeasureAverager(_StatelessMixin, BaseEstimator, TransformerMixin):
    """Per-segment average values for the selected measures."""

    def __init__(self, net: SemanticNet = None, measures=("sim:lin:sanchez-batet",),
                 token_weighted: bool = False):
        self.net = net
        self.measures = measures
        self.token_weighted = token_weighted

    def _parsed(self):
        if self.measures == "all":
            return all_measures()
        return [parse_measure(m) if isinstance(m, str) else m
                for m in self.measures]

    def fit(self, X, y=None):
        check_net(self.net)
        self._parsed()
        return self

    def transform(self, X) -> list[SegmentSeries]:
        check_net(self.net)
        parsed = self._parsed()
        out = []
        for i, segments in enumerate(X):
            out.append(series(segments, parsed, self.net,
                              source_id=f"doc{i}",
                              token_weighted=self.token_weighted))
        return out


class TrendClassifier(_StatelessMixin, BaseEstimator):
    """OLS trend over time points with convergence/divergence labels.

    predict returns one label per conversation for the first configured
    measure; transform returns the full {measure: slope} mapping.
    """

    def __init__(self, epsilon: float = 1e-9):
        self.epsilon = epsilon

    def fit(self, X, y=None):
        return self

    def _slopes(self, seg_series: SegmentSeries) -> dict[str, float]:
        return {m: ols_line(seg_series.series_for(m))[0]
                for m in seg_series.segments[0].values}

    def transform(self, X) -> list[dict[str, float]]:
        return [self._slopes(s) for s in X]

    def predict(self, X) -> list[str]:
        labels = []
        for seg_series in X:
            slopes = self._slopes(seg_series)
            first = next(iter(slopes))   # measure order as configured upstream
            labels.append(classify_slope(slopes[first], self.epsilon))
        return labels
