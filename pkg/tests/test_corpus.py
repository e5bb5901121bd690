"""Corpus loading, hashtag time series, and burst detection."""

from datetime import date, timedelta

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trendtag.corpus import (BurstConfig, TimeSeries, detect_bursts,
                             extract_hashtags, hashtag_series, load_tweets,
                             outlier_fraction, outlier_series,
                             timestamp_to_day)

DAY0 = date(2014, 2, 1)


def rec(tid, day_offset, text, user="u1"):
    day = DAY0 + timedelta(days=day_offset)
    return {"id": tid, "timestamp": day.isoformat() + "T10:00:00Z",
            "text": text, "user_id": user}


def corpus_from_series(values, hashtag="tag", users_per_day=1):
    """One corpus whose daily counts for `hashtag` equal `values`."""
    records = []
    serial = 0
    for offset, count in enumerate(values):
        for j in range(int(count)):
            records.append(rec(f"t{serial}", offset, f"x #{hashtag}",
                               user=f"u{j % max(users_per_day, 1)}"))
            serial += 1
    # anchor tweets pin the corpus date range even when edges are zero
    records.append(rec("pad-first", 0, "pad"))
    records.append(rec("pad-last", len(values) - 1, "pad"))
    corpus, _ = load_tweets(records)
    return corpus


class TestLoadTweets:
    def test_duplicate_ids_first_wins(self):
        corpus, report = load_tweets([
            rec("a", 0, "first #x"), rec("a", 1, "second #y"), rec("b", 0, "#z"),
        ])
        assert len(corpus) == 2
        assert corpus.get("a").hashtags == ("x",)
        assert report.duplicates == 1

    def test_hashtag_extraction(self):
        corpus, _ = load_tweets([rec("a", 0, "Go #Sochi2014!")])
        assert corpus.get("a").hashtags == ("sochi2014",)
        assert extract_hashtags("a #B #b c") == ["b", "b"]

    def test_empty_stream(self):
        corpus, report = load_tweets([])
        assert len(corpus) == 0
        assert corpus.start_day is None
        assert report.accepted == 0

    def test_malformed_records_counted_and_skipped(self):
        corpus, report = load_tweets([
            {"id": "a"},                                # missing fields
            {"id": "b", "timestamp": "nonsense", "text": "x", "user_id": "u"},
            rec("c", 0, "ok #fine"),
            {},
        ])
        assert len(corpus) == 1
        assert report.rejected == 3

    def test_epoch_and_iso_timestamps_agree(self):
        assert timestamp_to_day(1391947200) == timestamp_to_day(
            "2014-02-09T12:00:00Z")

    def test_day_bucketing_is_utc(self):
        # 23:30 UTC-5 is the next day in UTC
        assert timestamp_to_day("2014-02-09T23:30:00-05:00") == date(2014, 2, 10)


class TestHashtagSeries:
    def test_direct_count(self):
        corpus = corpus_from_series([5, 0, 2])
        series = hashtag_series(corpus, "tag", DAY0, date(2014, 2, 3))
        assert list(series.values) == [5, 0, 2]

    def test_unknown_hashtag_all_zero(self):
        corpus = corpus_from_series([1, 1, 1])
        series = hashtag_series(corpus, "nope", DAY0, date(2014, 2, 3))
        assert list(series.values) == [0, 0, 0]

    def test_single_day_range(self):
        corpus = corpus_from_series([3])
        series = hashtag_series(corpus, "tag", DAY0, DAY0)
        assert len(series) == 1 and series.values[0] == 3

    @given(st.lists(st.integers(min_value=0, max_value=5), min_size=1,
                    max_size=25))
    @settings(max_examples=50, deadline=None)
    def test_series_sum_equals_corpus_count(self, counts):
        corpus = corpus_from_series(counts)
        series = hashtag_series(corpus, "tag", DAY0,
                                DAY0 + timedelta(days=len(counts) - 1))
        assert series.values.sum() == len(corpus.tweets_with("tag"))


class TestOutlierFraction:
    def test_hand_example(self):
        # median of the window is 10, n_t = 100 -> |100-10|/max(10,10) = 9
        series = TimeSeries(DAY0, [10] * 30 + [100] + [10] * 30)
        assert outlier_fraction(series, 30) == pytest.approx(9.0)

    def test_no_deviation(self):
        series = TimeSeries(DAY0, [7.0] * 10)
        assert outlier_fraction(series, 4) == 0.0

    def test_floor_engages_when_median_zero(self):
        series = TimeSeries(DAY0, [0] * 40 + [40] + [0] * 40)
        assert outlier_fraction(series, 40) == pytest.approx(4.0)

    def test_window_clipped_at_boundary(self):
        series = TimeSeries(DAY0, [2, 2, 50])
        # clipped window is the whole series; median 2
        assert outlier_fraction(series, 2) == pytest.approx(48 / 10)

    @given(st.integers(min_value=10, max_value=500),
           st.integers(min_value=0, max_value=490))
    @settings(max_examples=60, deadline=None)
    def test_monotone_in_peak_count(self, n_t, bump):
        base = [10.0] * 61
        a = TimeSeries(DAY0, base[:30] + [float(n_t)] + base[31:])
        b = TimeSeries(DAY0, base[:30] + [float(n_t + bump)] + base[31:])
        assert outlier_fraction(b, 30) >= outlier_fraction(a, 30)


def spike_config(**kw):
    defaults = dict(min_users=1, variance_threshold=1.0,
                    trending_fraction_threshold=2.0)
    defaults.update(kw)
    return BurstConfig(**defaults)


class TestDetectBursts:
    def test_flat_series_rejected_by_variance(self):
        corpus = corpus_from_series([3] * 20)
        assert detect_bursts(corpus, "tag", spike_config()) == []

    def test_spike_detected_and_centered(self):
        values = [2] * 15 + [80] + [2] * 15
        corpus = corpus_from_series(values, users_per_day=3)
        config = spike_config()
        bursts = detect_bursts(corpus, "tag", config)
        assert len(bursts) == 1
        burst = bursts[0]
        series = hashtag_series(corpus, "tag", corpus.start_day, corpus.end_day)
        brute_peak = int(np.argmax(outlier_series(series, config)))
        assert burst.peak_day == series.day_at(brute_peak)
        assert burst.window_days == config.w
        assert burst.window_start <= burst.peak_day <= burst.window_end

    def test_tie_broken_by_earlier_day(self):
        values = [2] * 8 + [60] + [2] * 8 + [60] + [2] * 8
        corpus = corpus_from_series(values, users_per_day=3)
        bursts = detect_bursts(corpus, "tag", spike_config())
        assert bursts[0].peak_day == date(2014, 2, 9)

    def test_user_filter(self):
        values = [2] * 10 + [80] + [2] * 10
        corpus = corpus_from_series(values, users_per_day=1)
        assert detect_bursts(corpus, "tag", spike_config(min_users=5000)) == []

    def test_threshold_filter(self):
        values = [2] * 10 + [80] + [2] * 10
        corpus = corpus_from_series(values, users_per_day=3)
        config = spike_config(trending_fraction_threshold=1000.0)
        assert detect_bursts(corpus, "tag", config) == []

    def test_force_bypasses_filters(self):
        corpus = corpus_from_series([3] * 20)
        bursts = detect_bursts(corpus, "tag", spike_config(), force=True)
        assert len(bursts) == 1

    def test_window_clamped_at_series_edge(self):
        values = [80] + [2] * 20
        corpus = corpus_from_series(values, users_per_day=3)
        burst = detect_bursts(corpus, "tag", spike_config())[0]
        assert burst.window_start == corpus.start_day
        assert burst.window_days == 7

    def test_window_tweet_ids(self):
        values = [2] * 15 + [80] + [2] * 15
        corpus = corpus_from_series(values, users_per_day=3)
        burst = detect_bursts(corpus, "tag", spike_config())[0]
        expected = sum(1 for t in corpus.tweets_with("tag")
                       if burst.window_start <= t.day <= burst.window_end)
        assert len(burst.tweet_ids) == expected

    @given(st.lists(st.integers(min_value=0, max_value=60), min_size=3,
                    max_size=40))
    @settings(max_examples=40, deadline=None)
    def test_peak_matches_brute_force_scan(self, counts):
        if sum(counts) == 0:
            return
        corpus = corpus_from_series(counts)
        config = spike_config()
        bursts = detect_bursts(corpus, "tag", config, force=True)
        series = hashtag_series(corpus, "tag", corpus.start_day, corpus.end_day)
        p = outlier_series(series, config)
        best = max(range(len(p)), key=lambda i: (p[i], -i))
        assert bursts[0].peak_day == series.day_at(best)
        assert bursts[0].window_start <= bursts[0].peak_day <= bursts[0].window_end


class TestValidation:
    def test_even_median_window_rejected(self):
        with pytest.raises(ValueError):
            BurstConfig(median_window_days=60)

    def test_negative_series_rejected(self):
        with pytest.raises(ValueError):
            TimeSeries(DAY0, [1, -1])
