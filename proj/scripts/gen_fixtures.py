#!/usr/bin/env python3
"""Regenerates committed fixtures: the fixture WordPiece vocabulary, the
tokenizer reference encodings (produced with the canonical BertTokenizer
from the `transformers` package, which serves as the independent oracle),
the demo corpus tree, the starter dictionary, and the demo taxonomy /
question files.

Run from the repo root:

    python3 scripts/gen_fixtures.py

Outputs are deterministic (fixed seed) and are committed; tests read the
frozen files and never invoke Python.
"""
import json
import os
import random
import string

SEED = 20260825
MAX_LEN = 64

# ---------------------------------------------------------------- word pools

FUNCTION_WORDS = """
the a an of to and in is are was were it this that these those as at by for
from on with we you they he she be been being has have had not no yes can
will would should could may might must its their his her our your them if
then than when where which what who how why all each every some any more
most other into over under about between through during before after above
below up down out off again further once here there both few such only own
same so too very just because until while against per do does did done make
makes made use used using also many much new old first second third next last
""".split()

SCIENCE_WORDS = """
atom atoms cell cells energy force mass matter motion light water earth
plant plants animal animals science chemical physical biology chemistry
physics equation number numbers acid gas liquid solid heat temperature
electric current magnet gravity velocity acceleration speed distance time
unit units measure molecule molecules element elements compound reaction
oxygen hydrogen carbon nitrogen organism organisms system systems body
blood bone brain nucleus proton neutron electron electrons charge wave
waves sound frequency volume pressure density weight newton law laws theory
experiment observe observed observation particle particles soil rock rocks
river mountain climate weather season seasons food chain habitat species
leaf leaves root roots stem flower seed seeds fruit sugar starch protein
oxide metal metals mixture solution solvent state states change changes
melt boils freezes evaporation condensation friction machine machines lever
pulley circuit battery wire bulb sun moon star stars planet planets orbit
history region country countries people trade culture government citizens
rights duty map maps society economy farmer farmers crop crops
""".split()

EXTRA_DICT_WORDS = """
student students teacher teachers school learn learns learned learning
chapter topic subject question questions answer answers example examples
figure table page book read write draw show shows shown describe explain
define definition important simple large small smallest largest quickly
slowly always never often sometimes together apart called known form forms
formed create created process processes result results cause causes effect
effects part parts whole group groups kind kinds type types level levels
grow grows growth live lives living move moves moving work works working
push pull strong weak fast slow hot cold warm cool bright dark heavy
round flat long short wide narrow surface area inside outside object
objects material materials common natural different similar equal keep
kept hold held find found give given take taken help helps need needs
powerhouse combine combines combined weighs means capacity conserved
mitochondria value values point points line lines angle angles circle
squares triangle measure measured measuring amount amounts grams meters
seconds degrees percent total sum product difference quotient fraction
decimal ratio graph data chart model models test tests check checks
""".split()

NOUNS = """
atom cell plant animal molecule element force wave rock river magnet circuit
battery organism electron planet seed leaf root flower crop farmer student
teacher particle compound mixture solution machine lever pulley habitat
species star moon map
""".split()

VERBS_S = """
moves grows forms shows changes combines creates describes explains causes
produces absorbs releases carries attracts repels contains supports measures
pushes pulls heats cools orbits stores conducts reflects
""".split()

ADJS = """
small large heavy light strong weak simple common natural bright dark hot
cold fast slow solid liquid electric physical chemical living
""".split()

PREP_TAILS = [
    "in the water",
    "near the surface",
    "over time",
    "under pressure",
    "during the experiment",
    "inside the cell",
    "through the circuit",
    "around the sun",
    "at room temperature",
    "in the soil",
    "between the particles",
    "along the wire",
]


def fixture_vocab():
    specials = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"]
    letters = list(string.ascii_lowercase)
    digits = list(string.digits)
    punct = list(".,!?-()'\":;/%+=&*#@$_<>[]{}~^|\\") + ["—", "…", "“", "”", "‘", "’"]
    suffixes = ["##s", "##es", "##ed", "##ing", "##ly", "##er", "##est", "##tion",
                "##ment", "##ness", "##able", "##al", "##ic", "##ical", "##ous",
                "##ive", "##ful", "##ity", "##ies"]
    words = sorted(set(FUNCTION_WORDS + SCIENCE_WORDS + NOUNS + VERBS_S + ADJS
                       + "hello world kg cm km bends misty naive cafe resume pinata".split()))
    trace = ["un", "##aff", "##able", "run", "##ning"]
    cont_letters = ["##" + c for c in letters] + ["##" + d for d in digits]
    raw = specials + letters + digits + cont_letters + punct + suffixes + ["光"] + words + trace
    vocab, seen = [], set()
    for w in raw:  # cont_letters and suffixes overlap on "##s" etc.
        if w not in seen:
            vocab.append(w)
            seen.add(w)
    return vocab


def make_sentences(rng):
    crafted = [
        "Héllo, world!",
        "It weighs 3.5 kg.",
        "Atoms are small.",
        "They combine.",
        "The mitochondria is the powerhouse of the cell.",
        "naïve café résumé piñata",
        "Force (N) = mass × acceleration!",
        "ऊर्जा is energy",
        "“Energy—the capacity to do work—is conserved.”",
        "光 means light",
        "Water 💧 is life.",
        "e.g. Dr. Smith measured 3.5 cm.",
        "A wire carries current; a bulb glows.",
        "Is the answer 42?",
        "The plant grows 2 cm per day, then stops.",
        "Misty rivers bend slowly...",
        "UPPERCASE WORDS LOWER nicely.",
        "Hyphen-ated com-pound words split.",
        "Numbers 0 1 2 3 4 5 6 7 8 9 count.",
        "Trailing spaces   collapse.   ",
    ]
    # one long sentence to force truncation at MAX_LEN
    long_words = []
    for i in range(90):
        long_words.append(rng.choice(NOUNS))
    crafted.append("The " + " ".join(long_words) + " list goes on.")

    sentences = list(crafted)
    templates = [
        "The {a} {n} {v} {tail}.",
        "A {n} {v} {tail}.",
        "Every {n} {v} the {n2}.",
        "The {n} and the {n2} {v2} {tail}.",
        "Some {a} {n}s {v2} {tail}!",
        "Why does the {n} {v_base} {tail}?",
        "Each {a} {n} {v} near the {n2}.",
        "Scientists observed that the {n} {v} {tail}.",
    ]
    v_base = {
        "moves": "move", "grows": "grow", "forms": "form", "shows": "show",
        "changes": "change", "combines": "combine", "creates": "create",
        "describes": "describe", "explains": "explain", "causes": "cause",
        "produces": "produce", "absorbs": "absorb", "releases": "release",
        "carries": "carry", "attracts": "attract", "repels": "repel",
        "contains": "contain", "supports": "support", "measures": "measure",
        "pushes": "push", "pulls": "pull", "heats": "heat", "cools": "cool",
        "orbits": "orbit", "stores": "store", "conducts": "conduct",
        "reflects": "reflect",
    }
    while len(sentences) < 200:
        t = rng.choice(templates)
        v = rng.choice(VERBS_S)
        s = t.format(a=rng.choice(ADJS), n=rng.choice(NOUNS), n2=rng.choice(NOUNS),
                     v=v, v2=rng.choice(["move", "change", "grow", "form"]),
                     v_base=v_base[v], tail=rng.choice(PREP_TAILS))
        sentences.append(s)
    return sentences


def write_tokenizer_reference(vocab, sentences, outdir):
    from transformers import BertTokenizer

    vocab_path = os.path.join(outdir, "fixture_vocab.txt")
    with open(vocab_path, "w", encoding="utf-8") as f:
        f.write("\n".join(vocab) + "\n")

    tok = BertTokenizer(vocab_path, do_lower_case=True)
    with open(os.path.join(outdir, "tok_sentences.txt"), "w", encoding="utf-8") as f:
        f.write("\n".join(sentences) + "\n")
    with open(os.path.join(outdir, "tok_reference_ids.txt"), "w", encoding="utf-8") as f:
        for s in sentences:
            ids = tok.encode(s, max_length=MAX_LEN, padding="max_length", truncation=True)
            assert len(ids) == MAX_LEN
            f.write(" ".join(str(i) for i in ids) + "\n")


# ----------------------------------------------------------------- demo tree

DEVANAGARI_LINES = [
    "ऊर्जा कार्य करने की क्षमता है।",
    "यह ऊर्जा ऊष्मा में बदलती है।",
    "ऊर्जा is energy in Hindi.",
    "परमाणु पदार्थ की सबसे छोटी इकाई है।",
    "The word for water is पानी here.",
    "प्रकाश एक सीधी रेखा में चलता है।",
]


def gibberish(rng, nwords):
    words = []
    for _ in range(nwords):
        w = "".join(rng.choice("bcdfghjklmnpqrstvwxz") for _ in range(rng.randint(4, 8)))
        words.append(w)
    words[0] = words[0].capitalize()
    return " ".join(words) + "."


def demo_sentence(rng):
    forms = [
        "The {a} {n} {v} {tail}.",
        "A {n} {v} {tail}.",
        "Each {a} {n} {v} near the {n2}.",
        "Students observed that the {n} {v} {tail}.",
        "The {n} and the {n2} change {tail}.",
        "Heat flows from the {a} {n} to the {n2}.",
        "This chapter explains how the {n} {v} {tail}.",
    ]
    return rng.choice(forms).format(
        a=rng.choice(ADJS), n=rng.choice(NOUNS), n2=rng.choice(NOUNS),
        v=rng.choice(VERBS_S), tail=rng.choice(PREP_TAILS))


def html_doc(title, paragraphs):
    ps = "\n".join("    <p>%s</p>" % p for p in paragraphs)
    return f"""<!DOCTYPE html>
<html>
<head>
  <title>{title}</title>
  <style>p {{ margin: 0; }}</style>
  <script>var tracker = "ignore me";</script>
</head>
<body>
  <nav><a href="/">home</a> | <a href="/toc">contents</a></nav>
  <h1>{title}</h1>
  <div class="content">
{ps}
  </div>
  <script>console.log("footer script");</script>
  <footer>copyright notice</footer>
</body>
</html>
"""


def write_demo_tree(rng, root):
    src_root = os.path.join(root, "corpus_src")
    os.makedirs(src_root, exist_ok=True)
    index = []

    dup_pool = [demo_sentence(rng) for _ in range(12)]

    def paragraphs_for(doc_seed, n_par, with_noise, dup_count):
        prng = random.Random(doc_seed)
        paras = []
        dups = list(dup_pool[:dup_count])
        for p in range(n_par):
            sents = [demo_sentence(prng) for _ in range(prng.randint(3, 6))]
            if dups and p % 2 == 0:
                sents.append(dups.pop())
            if with_noise and p % 3 == 1:
                sents.append(gibberish(prng, prng.randint(4, 7)))
            if with_noise and p % 4 == 2:
                sents.append(prng.choice(DEVANAGARI_LINES))
            if with_noise and p % 5 == 3:
                sents.append(prng.choice(["So yeah.", "Okay cool.", "Um, right."]))
            paras.append(" ".join(sents))
        return paras

    source_defs = [
        ("greenfield", ["P", "C"], "html", 4, 12),
        ("rivertown", ["B", "L"], "html", 4, 12),
        ("northvale", ["P", "SS"], "plain_text", 3, 14),
    ]
    for si, (source, subjects, kind, ndocs, n_par) in enumerate(source_defs):
        os.makedirs(os.path.join(src_root, source), exist_ok=True)
        for d in range(ndocs):
            doc_id = f"{source}-{d:03d}"
            paras = paragraphs_for(SEED + si * 100 + d, n_par, with_noise=True,
                                   dup_count=2 if d == 0 else 1)
            if kind == "html":
                rel = f"{source}/doc_{d:03d}.html"
                body = html_doc(f"{source.title()} Chapter {d + 1}", paras)
            else:
                rel = f"{source}/doc_{d:03d}.txt"
                body = "\n\n".join(paras) + "\n"
            with open(os.path.join(src_root, rel), "w", encoding="utf-8") as f:
                f.write(body)
            index.append({"doc_id": doc_id, "source": source, "subjects": subjects,
                          "kind": kind, "path": rel})

    with open(os.path.join(src_root, "sources.jsonl"), "w", encoding="utf-8") as f:
        for entry in index:
            f.write(json.dumps(entry, sort_keys=True) + "\n")


def write_wordlist(path):
    words = set(FUNCTION_WORDS + SCIENCE_WORDS + EXTRA_DICT_WORDS + NOUNS + VERBS_S + ADJS)
    words |= {"hello", "world", "kg", "cm", "km", "smith", "dr", "yeah", "okay",
              "cool", "um", "right", "scientists", "naive", "cafe", "resume",
              "pinata", "misty", "bends", "hindi", "word", "energy", "chapter",
              "flows", "glows", "bulb", "wire", "carries", "stops", "day", "life"}
    with open(path, "w", encoding="utf-8") as f:
        f.write("# Starter English dictionary for the spell-check filter.\n")
        f.write("# One lowercase word per line; extend for production corpora.\n")
        for w in sorted(words):
            f.write(w + "\n")


def write_taxonomy(root):
    taxonomy = []
    label_id = 0
    chapters = {
        "science": {
            "force and motion": ["newton's laws", "friction", "simple machines"],
            "matter": ["states of matter", "atoms and molecules", "mixtures"],
            "energy": ["heat transfer", "electric circuits", "light and sound"],
            "life processes": ["cells", "photosynthesis", "food chains"],
        },
        "mathematics": {
            "geometry": ["angles", "triangles", "circles"],
            "arithmetic": ["fractions", "decimals", "ratios"],
            "data handling": ["graphs", "averages", "probability"],
        },
        "social studies": {
            "civics": ["government", "citizen rights", "local bodies"],
            "geography": ["maps", "climate", "rivers"],
            "economics": ["trade", "agriculture", "money and banking"],
        },
    }
    for subject, chs in chapters.items():
        for chapter, topics in chs.items():
            for topic in topics:
                taxonomy.append({"label_id": label_id, "subject": subject,
                                 "chapter": chapter, "topic": topic})
                label_id += 1

    with open(os.path.join(root, "taxonomy.jsonl"), "w", encoding="utf-8") as f:
        for t in taxonomy:
            f.write(json.dumps(t, sort_keys=True) + "\n")

    rng = random.Random(SEED + 777)
    question_forms = [
        "Which section covers {t}?",
        "A student asks about {t} in {c}.",
        "Explain the idea of {t} for the {s} class.",
        "Where does {t} belong in the {s} syllabus?",
    ]
    questions = []
    for qi in range(60):
        node = taxonomy[qi % len(taxonomy)]
        form = rng.choice(question_forms)
        text = form.format(t=node["topic"], c=node["chapter"], s=node["subject"])
        questions.append({"question_id": f"q{qi:03d}", "text": text,
                          "gold_label_id": node["label_id"]})
    with open(os.path.join(root, "questions.jsonl"), "w", encoding="utf-8") as f:
        for q in questions:
            f.write(json.dumps(q, sort_keys=True) + "\n")


def main():
    rng = random.Random(SEED)
    os.makedirs("tests/fixtures", exist_ok=True)
    os.makedirs("data/demo", exist_ok=True)

    vocab = fixture_vocab()
    sentences = make_sentences(rng)
    write_tokenizer_reference(vocab, sentences, "tests/fixtures")

    # the demo tree reuses the fixture vocabulary for training runs
    with open("data/demo/vocab.txt", "w", encoding="utf-8") as f:
        f.write("\n".join(vocab) + "\n")

    write_demo_tree(rng, "data/demo")
    write_wordlist("data/wordlist.txt")
    write_taxonomy("data/demo")
    print("fixtures written: vocab=%d tokens, %d reference sentences" % (len(vocab), len(sentences)))


if __name__ == "__main__":
    main()
