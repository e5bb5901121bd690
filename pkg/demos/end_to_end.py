"""Full pipeline on a synthetic event: burst -> candidates -> learner -> metrics.

Generates two months of tweets about a fictional winter-games event and a
matching mini-Wikipedia, annotates the trending hashtag end to end, and
scores the ranking against hand-written relevance labels.

Run with: python3 demos/end_to_end.py
"""

import random
from datetime import date, timedelta

from trendtag import (PipelineConfig, annotate_hashtag, build_snapshot,
                      evaluate, load_tweets, trending_hashtags)

TARGET = "2014 Winter Olympics"
CITY = "Sochi"
ATHLETES = [f"Athlete {i:02d}" for i in range(12)]
VENUES = [f"Sochi Venue {i}" for i in range(4)]
FILLER = [f"Background Topic {i:02d}" for i in range(40)]
START = date(2014, 2, 1)
PEAK = date(2014, 2, 13)
SURGE = {-3: 40, -2: 100, -1: 240, 0: 580, 1: 220, 2: 100, 3: 40}
TOPIC = ["hockey", "gold", "medal", "ceremony", "figure", "skating",
         "final", "team", "russia", "games", "olympic", "podium"]
NOISE = ["today", "watch", "love", "great", "wow", "live", "game",
         "night", "best", "see", "go", "now"]


def make_corpus(rng):
    records = []
    serial = 0
    for offset in range(59):
        day = START + timedelta(days=offset)
        for _ in range(40 + SURGE.get((day - PEAK).days, 0)):
            words = rng.sample(TOPIC, 3) + rng.sample(NOISE, 2)
            athlete = rng.choice(ATHLETES).lower()
            records.append({
                "id": f"t{serial}", "timestamp": day.isoformat(),
                "text": f"{words[0]} {athlete} sochi {words[1]} {words[2]} "
                        f"#sochi2014 {words[3]} {words[4]}",
                "user_id": f"u{serial % 700}"})
            serial += 1
    corpus, report = load_tweets(records)
    print(f"corpus: {report.accepted} tweets over 59 days")
    return corpus


def make_snapshot(rng):
    entities = [TARGET, CITY, "Russia", "Ice hockey"] + ATHLETES + VENUES + FILLER
    pages = [(e, "ARTICLE") for e in entities]
    pages.append(("Sochi 2014", f"REDIRECT:{TARGET}"))

    anchors = [("sochi", TARGET, 40), ("sochi", CITY, 15),
               ("sochi 2014", TARGET, 25), ("olympics", TARGET, 30),
               ("russia", "Russia", 20), ("hockey", "Ice hockey", 18)]
    for i, athlete in enumerate(ATHLETES):
        anchors.append((athlete.lower(), athlete, 5))
        anchors.append((athlete.lower(), FILLER[i], 2))

    links = [(TARGET, other)
             for other in ATHLETES + VENUES + [CITY, "Russia", "Ice hockey"]]
    for i, athlete in enumerate(ATHLETES):
        links += [(athlete, TARGET), (athlete, CITY), (athlete, "Russia"),
                  (athlete, "Ice hockey"), (athlete, VENUES[i % len(VENUES)]),
                  (athlete, ATHLETES[(i + 1) % len(ATHLETES)]),
                  (athlete, ATHLETES[(i + 2) % len(ATHLETES)])]
    for i, venue in enumerate(VENUES):
        links += [(venue, TARGET), (venue, CITY)]
        links += [(venue, ATHLETES[(3 * i + j) % len(ATHLETES)])
                  for j in range(3)]
    links += [(CITY, TARGET), (CITY, "Russia"), ("Russia", CITY),
              ("Ice hockey", "Russia")]
    links += [(CITY, venue) for venue in VENUES]
    for i, filler in enumerate(FILLER):
        links += [(filler, "Russia"), (filler, FILLER[(i + 1) % len(FILLER)])]

    revisions = [{"title": e, "timestamp": "2014-01-05T00:00:00Z",
                  "text": f"article about {e.lower()} history "
                          f"{rng.choice(TOPIC)} reference notes"}
                 for e in entities]
    grown = "the winter games are held in sochi russia"
    for i in range(5):
        day = PEAK + timedelta(days=i - 2)
        grown += " " + " ".join(rng.choice(TOPIC if rng.random() < 0.75
                                           else NOISE) for _ in range(30))
        revisions.append({"title": TARGET, "text": grown,
                          "timestamp": day.isoformat() + f"T0{i + 1}:00:00Z"})

    pageviews = []
    for offset in range(59):
        day = START + timedelta(days=offset)
        surge = SURGE.get((day - PEAK).days, 0)
        pageviews += [(TARGET, day, 3 * (40 + surge)),
                      (CITY, day, 120 + surge), ("Russia", day, 300)]
    snapshot = build_snapshot(pages, anchors, links, revisions, pageviews)
    print(f"snapshot: {snapshot.entity_count} entities, "
          f"{len(snapshot.lexicon)} surface forms")
    return snapshot


def main():
    rng = random.Random(2014)
    corpus = make_corpus(rng)
    snapshot = make_snapshot(rng)

    config = PipelineConfig(sample_size=800)
    config.burst.min_users = 50
    config.burst.variance_threshold = 100.0
    config.burst.trending_fraction_threshold = 5.0

    print("\n== Trending detection ==")
    bursts = trending_hashtags(corpus, config)
    for burst in bursts:
        print(f"  #{burst.hashtag}: window {burst.window_start} .. "
              f"{burst.window_end}, peak outlier fraction "
              f"{burst.peak_outlier_fraction:.1f}")

    print("\n== Annotation ==")
    annotation = annotate_hashtag(corpus, snapshot, "sochi2014", config)
    alpha, beta, gamma = annotation.weights
    print(f"  learned weights: alpha={alpha:.3f} beta={beta:.3f} "
          f"gamma={gamma:.3f}")
    print(f"  {'rank':>4}  {'walk score':>10}  {'f_m':>6} {'f_c':>6} "
          f"{'f_t':>6}  entity")
    for rank, e in enumerate(annotation.entities, start=1):
        print(f"  {rank:>4}  {e.r:>10.4f}  {e.f_m:>6.3f} {e.f_c:>6.3f} "
              f"{e.f_t:>6.3f}  {e.title} [{e.provenance}]")

    print("\n== Evaluation against hand labels ==")
    gold = {("sochi2014", TARGET): 2, ("sochi2014", CITY): 1,
            ("sochi2014", "Russia"): 1, ("sochi2014", "Ice hockey"): 1}
    for athlete in ATHLETES[:4]:
        gold[("sochi2014", athlete)] = 1
    report = evaluate([annotation], gold)
    macro = report["macro"]
    print(f"  P@5 = {macro['p_at_5']:.3f}  P@15 = {macro['p_at_15']:.3f}  "
          f"MAP = {macro['map']:.3f}")


if __name__ == "__main__":
    main()
