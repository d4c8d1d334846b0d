#!/usr/bin/env python3
"""Generate the bundled mini-corpus: synthetic scientific articles with gold
Universal Dependencies trees, written as the JSON Lines corpus container.

Each article restates a small set of facts with varied sentence templates, so
documents are long and redundant in the way real articles are. The output is
fully determined by --seed.
"""

import argparse
import json
import random

TOPICS = {
    "astro": {
        "nouns": [("galaxy", "galaxies"), ("star", "stars"), ("halo", "halos"), ("cluster", "clusters"),
                  ("disk", "disks"), ("gas", "gases"), ("model", "models"), ("simulation", "simulations"),
                  ("merger", "mergers"), ("spectrum", "spectra")],
        "compounds": ["dark", "star", "gas", "radio", "x-ray"],
        "adjs": ["massive", "young", "semi-analytical", "luminous", "distant", "cold"],
        "verbs": [("predict", "predicts", "predicted"), ("suppress", "suppresses", "suppressed"),
                  ("trigger", "triggers", "triggered"), ("heat", "heats", "heated"),
                  ("explain", "explains", "explained"), ("constrain", "constrains", "constrained")],
        "props": ["formation", "growth", "luminosity", "rate", "mass"],
    },
    "bio": {
        "nouns": [("antioxidant", "antioxidants"), ("enzyme", "enzymes"), ("cell", "cells"),
                  ("protein", "proteins"), ("membrane", "membranes"), ("radical", "radicals"),
                  ("patient", "patients"), ("tissue", "tissues"), ("gene", "genes"), ("molecule", "molecules")],
        "compounds": ["liver", "plasma", "oxygen", "blood", "cancer"],
        "adjs": ["oxidative", "enzymatic", "free", "chronic", "cellular", "toxic"],
        "verbs": [("control", "controls", "controlled"), ("reduce", "reduces", "reduced"),
                  ("protect", "protects", "protected"), ("damage", "damages", "damaged"),
                  ("regulate", "regulates", "regulated"), ("cause", "causes", "caused")],
        "props": ["depletion", "level", "activity", "expression", "deficit"],
    },
    "mhd": {
        "nouns": [("turbulence", "turbulences"), ("exponent", "exponents"), ("shell", "shells"),
                  ("field", "fields"), ("scaling", "scalings"), ("relation", "relations"),
                  ("flow", "flows"), ("velocity", "velocities"), ("cascade", "cascades"), ("structure", "structures")],
        "compounds": ["magnetic", "time", "shell", "energy", "bridge"],
        "adjs": ["dynamic", "linear", "passive", "multiscaling", "anomalous", "equal"],
        "verbs": [("relate", "relates", "related"), ("govern", "governs", "governed"),
                  ("dominate", "dominates", "dominated"), ("transfer", "transfers", "transferred"),
                  ("characterize", "characterizes", "characterized"), ("break", "breaks", "broken")],
        "props": ["intermittency", "spectrum", "dissipation", "statistics", "behavior"],
    },
    "mat": {
        "nouns": [("alloy", "alloys"), ("crystal", "crystals"), ("defect", "defects"), ("grain", "grains"),
                  ("film", "films"), ("surface", "surfaces"), ("sample", "samples"), ("phase", "phases"),
                  ("electrode", "electrodes"), ("layer", "layers")],
        "compounds": ["thin", "boundary", "oxide", "lithium", "carbon"],
        "adjs": ["porous", "stable", "amorphous", "metallic", "brittle", "dense"],
        "verbs": [("strengthen", "strengthens", "strengthened"), ("weaken", "weakens", "weakened"),
                  ("stabilize", "stabilizes", "stabilized"), ("increase", "increases", "increased"),
                  ("limit", "limits", "limited"), ("enhance", "enhances", "enhanced")],
        "props": ["conductivity", "hardness", "capacity", "diffusion", "strain"],
    },
    "clim": {
        "nouns": [("aerosol", "aerosols"), ("cloud", "clouds"), ("ocean", "oceans"), ("ice", "ices"),
                  ("forcing", "forcings"), ("temperature", "temperatures"), ("model", "models"),
                  ("region", "regions"), ("feedback", "feedbacks"), ("current", "currents")],
        "compounds": ["sea", "surface", "carbon", "heat", "rain"],
        "adjs": ["tropical", "regional", "global", "seasonal", "warm", "polar"],
        "verbs": [("amplify", "amplifies", "amplified"), ("offset", "offsets", "offset"),
                  ("drive", "drives", "driven"), ("modulate", "modulates", "modulated"),
                  ("reflect", "reflects", "reflected"), ("absorb", "absorbs", "absorbed")],
        "props": ["uptake", "variability", "sensitivity", "transport", "extent"],
    },
    "nlp": {
        "nouns": [("summary", "summaries"), ("sentence", "sentences"), ("proposition", "propositions"),
                  ("document", "documents"), ("reader", "readers"), ("memory", "memories"),
                  ("tree", "trees"), ("score", "scores"), ("graph", "graphs"), ("system", "systems")],
        "compounds": ["memory", "content", "word", "summary", "graph"],
        "adjs": ["extractive", "redundant", "coherent", "long", "relevant", "local"],
        "verbs": [("select", "selects", "selected"), ("rank", "ranks", "ranked"),
                  ("score", "scores", "scored"), ("connect", "connects", "connected"),
                  ("prune", "prunes", "pruned"), ("recall", "recalls", "recalled")],
        "props": ["coverage", "redundancy", "coherence", "length", "budget"],
    },
}

SECTIONS = ["introduction", "methods", "results", "discussion", "conclusion"]


class Sentence:
    def __init__(self):
        self.toks = []
        self.last_plural = False

    def tok(self, form, upos, lemma=None):
        t = {"form": form, "lemma": lemma if lemma is not None else form.lower(), "upos": upos,
             "head": None, "deprel": None}
        self.toks.append(t)
        return t

    @staticmethod
    def attach(dep, head, rel):
        dep["head"] = head
        dep["deprel"] = rel

    def text(self):
        return " ".join(t["form"] for t in self.toks)

    def conllu(self):
        index = {id(t): i + 1 for i, t in enumerate(self.toks)}
        lines = ["# text = " + self.text()]
        roots = 0
        for i, t in enumerate(self.toks):
            head = 0 if t["head"] is None else index[id(t["head"])]
            roots += head == 0
            lines.append("\t".join([str(i + 1), t["form"], t["lemma"], t["upos"], "_", "_", str(head),
                                    t["deprel"] or "root", "_", "_"]))
        assert roots == 1, self.text()
        return "\n".join(lines) + "\n"


class Concept:
    """A noun phrase: optional adjective, optional compound, head noun,
    optional 'of' modifier naming a property."""

    def __init__(self, noun, plural, adj=None, compound=None, prop=None):
        self.noun, self.plural, self.adj, self.compound, self.prop = noun, plural, adj, compound, prop

    def render(self, s, rng, det=True):
        """Appends the phrase; returns its head token."""
        use_plural = rng.random() < 0.35
        s.last_plural = use_plural and self.prop is None
        if self.prop is not None:
            # "the growth of massive galaxies": property noun heads the phrase.
            d = s.tok("the", "DET") if det else None
            head = s.tok(self.prop, "NOUN")
            case = s.tok("of", "ADP")
            inner = self._core(s, use_plural)
            if d:
                s.attach(d, head, "det")
            s.attach(case, inner, "case")
            s.attach(inner, head, "nmod")
            return head
        d = None
        if det:
            d = s.tok(rng.choice(["these", "such"]) if use_plural else rng.choice(["the", "this", "a"]), "DET")
        head = self._core(s, use_plural)
        if d:
            s.attach(d, head, "det")
        return head

    def _core(self, s, plural):
        a = s.tok(self.adj, "ADJ") if self.adj else None
        c = s.tok(self.compound, "NOUN") if self.compound else None
        form = self.plural if plural else self.noun
        head = s.tok(form, "NOUN", self.noun)
        if a:
            s.attach(a, head, "amod")
        if c:
            s.attach(c, head, "compound")
        return head


def verb_token(s, verb, tense):
    lemma, present, past = verb
    if tense == "past":
        return s.tok(past, "VERB", lemma)
    return s.tok(lemma if s.last_plural else present, "VERB", lemma)


def be_token(s):
    return s.tok("are" if s.last_plural else "is", "AUX", "be")


def t_svo(s, rng, f):
    subj = f["subj"].render(s, rng)
    v = verb_token(s, f["verb"], "present")
    obj = f["obj"].render(s, rng)
    p = s.tok(".", "PUNCT")
    s.attach(subj, v, "nsubj")
    s.attach(obj, v, "obj")
    s.attach(p, v, "punct")


def t_we_show(s, rng, f):
    we = s.tok("we", "PRON")
    show = s.tok(rng.choice(["show", "find", "argue", "confirm"]), "VERB")
    that = s.tok("that", "SCONJ")
    subj = f["subj"].render(s, rng)
    v = verb_token(s, f["verb"], "present")
    obj = f["obj"].render(s, rng)
    p = s.tok(".", "PUNCT")
    s.attach(we, show, "nsubj")
    s.attach(that, v, "mark")
    s.attach(subj, v, "nsubj")
    s.attach(obj, v, "obj")
    s.attach(v, show, "ccomp")
    s.attach(p, show, "punct")


def t_coord(s, rng, f, g):
    subj = f["subj"].render(s, rng)
    v = verb_token(s, f["verb"], "present")
    obj = f["obj"].render(s, rng)
    cc = s.tok("and", "CCONJ")
    obj2 = g["obj"].render(s, rng)
    p = s.tok(".", "PUNCT")
    s.attach(subj, v, "nsubj")
    s.attach(obj, v, "obj")
    s.attach(cc, obj2, "cc")
    s.attach(obj2, obj, "conj")
    s.attach(p, v, "punct")


def t_passive(s, rng, f):
    obj = f["obj"].render(s, rng)
    aux = be_token(s)
    v = verb_token(s, f["verb"], "past")
    by = s.tok("by", "ADP")
    subj = f["subj"].render(s, rng)
    p = s.tok(".", "PUNCT")
    s.attach(obj, v, "nsubj:pass")
    s.attach(aux, v, "aux:pass")
    s.attach(by, subj, "case")
    s.attach(subj, v, "obl")
    s.attach(p, v, "punct")


def t_obl(s, rng, f, setting):
    subj = f["subj"].render(s, rng)
    adv = s.tok("also", "ADV") if rng.random() < 0.4 else None
    v = verb_token(s, f["verb"], "present")
    obj = f["obj"].render(s, rng)
    prep = s.tok(rng.choice(["in", "within", "across"]), "ADP")
    where = setting.render(s, rng)
    p = s.tok(".", "PUNCT")
    s.attach(subj, v, "nsubj")
    if adv:
        s.attach(adv, v, "advmod")
    s.attach(obj, v, "obj")
    s.attach(prep, where, "case")
    s.attach(where, v, "obl")
    s.attach(p, v, "punct")


def t_copula(s, rng, f, adj):
    subj = f["obj"].render(s, rng)
    cop = be_token(s)
    a = s.tok(adj, "ADJ")
    prep = s.tok("for", "ADP")
    other = f["subj"].render(s, rng)
    p = s.tok(".", "PUNCT")
    s.attach(subj, a, "nsubj")
    s.attach(cop, a, "cop")
    s.attach(prep, other, "case")
    s.attach(other, a, "obl")
    s.attach(p, a, "punct")


def t_we_use(s, rng, f, setting):
    we = s.tok("we", "PRON")
    v = s.tok(rng.choice(["study", "measure", "model", "examine"]), "VERB")
    obj = f["obj"].render(s, rng)
    prep = s.tok("with", "ADP")
    inst = setting.render(s, rng)
    p = s.tok(".", "PUNCT")
    s.attach(we, v, "nsubj")
    s.attach(obj, v, "obj")
    s.attach(prep, inst, "case")
    s.attach(inst, v, "obl")
    s.attach(p, v, "punct")


def make_concept(rng, vocab):
    noun, plural = rng.choice(vocab["nouns"])
    adj = rng.choice(vocab["adjs"]) if rng.random() < 0.5 else None
    compound = rng.choice(vocab["compounds"]) if rng.random() < 0.4 else None
    prop = rng.choice(vocab["props"]) if rng.random() < 0.3 else None
    return Concept(noun, plural, adj, compound, prop)


def make_document(doc_id, topic, rng, n_sentences):
    vocab = TOPICS[topic]
    facts = []
    for _ in range(rng.randint(6, 9)):
        facts.append({"subj": make_concept(rng, vocab), "verb": rng.choice(vocab["verbs"]),
                      "obj": make_concept(rng, vocab)})
    settings = [make_concept(rng, vocab) for _ in range(4)]
    # A few facts dominate, which is what makes the article redundant.
    weights = [1.0 / (i + 1) for i in range(len(facts))]

    sections = []
    per_section = [n_sentences // len(SECTIONS)] * len(SECTIONS)
    for i in range(n_sentences - sum(per_section)):
        per_section[i] += 1
    for name, count in zip(SECTIONS, per_section):
        blocks = []
        for _ in range(count):
            f = rng.choices(facts, weights)[0]
            s = Sentence()
            kind = rng.random()
            if kind < 0.25:
                t_svo(s, rng, f)
            elif kind < 0.40:
                t_we_show(s, rng, f)
            elif kind < 0.52:
                t_coord(s, rng, f, rng.choice(facts))
            elif kind < 0.65:
                t_passive(s, rng, f)
            elif kind < 0.80:
                t_obl(s, rng, f, rng.choice(settings))
            elif kind < 0.90:
                t_copula(s, rng, f, rng.choice(vocab["adjs"]))
            else:
                t_we_use(s, rng, f, rng.choice(settings))
            blocks.append(s.conllu())
        sections.append({"name": name, "conllu": "\n".join(blocks)})

    summary = []
    for f in facts[:4]:
        s = Sentence()
        t_svo(s, rng, f)
        summary.append(s.text())
    return {"doc_id": doc_id, "sections": sections, "reference": " ".join(summary)}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", required=True)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--sentences", type=int, default=96, help="sentences per document")
    ap.add_argument("--topic", choices=sorted(TOPICS), help="write one document of exactly --sentences sentences")
    args = ap.parse_args()
    rng = random.Random(args.seed)
    with open(args.out, "w", encoding="utf-8") as out:
        if args.topic:
            doc = make_document(f"long-{args.topic}", args.topic, rng, args.sentences)
            out.write(json.dumps(doc, ensure_ascii=False) + "\n")
            return
        for i, topic in enumerate(sorted(TOPICS)):
            n = args.sentences + rng.randint(0, 24)
            doc = make_document(f"doc{i + 1:02d}-{topic}", topic, rng, n)
            out.write(json.dumps(doc, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main()
