"""Regenerate the bundled planted-cluster fixture in src/coword/data/.

Sixty journal-style titles: university titles drawn from one topic word
set, medical titles from a disjoint one, both sprinkled with shared noise
words; general titles made of noise words only; two bridging titles that
mix the groups and one mixed-script title. Deterministic.
"""
import random
from pathlib import Path

UNIVERSITY = ["北京", "理工", "工业", "师范", "大学", "学院", "学报"]
MEDICAL = ["中华", "医学", "临床", "药学", "护理", "医院", "杂志"]
NOISE = ["研究", "技术", "进展", "管理", "信息", "通讯", "科学", "上海"]
EXTRA = ["卫生", "职业", "工程", "农业", "教育", "社会"]

DATA = Path(__file__).resolve().parent.parent / "src" / "coword" / "data"


def title(rng, group, n_topic):
    chosen = set(rng.sample(group, n_topic))
    words = [w for w in group if w in chosen]
    if rng.random() < 0.5:
        words.insert(rng.randrange(len(words) + 1), rng.choice(NOISE))
    return "".join(words)


def main():
    rng = random.Random(20080101)
    titles = []
    for _ in range(19):
        titles.append(title(rng, UNIVERSITY, rng.randint(3, 5)))
    for _ in range(19):
        titles.append(title(rng, MEDICAL, rng.randint(3, 5)))
    for _ in range(19):
        titles.append("".join(rng.sample(NOISE + EXTRA, rng.randint(2, 3))))
    titles += [
        "医学院学报",
        "卫生职业学院学报",
        "Chinese Journal of 临床药学",
    ]
    rng.shuffle(titles)
    DATA.mkdir(parents=True, exist_ok=True)
    (DATA / "planted_titles.txt").write_text("\n".join(titles) + "\n", encoding="utf-8")
    lexicon = ["# lexicon for planted_titles.txt"]
    lexicon += [f"{w}\t10" for w in UNIVERSITY + MEDICAL + NOISE + EXTRA]
    (DATA / "planted_lexicon.txt").write_text("\n".join(lexicon) + "\n", encoding="utf-8")
    (DATA / "planted_groups.txt").write_text(
        "university\t" + " ".join(UNIVERSITY) + "\nmedical\t" + " ".join(MEDICAL) + "\n",
        encoding="utf-8",
    )


if __name__ == "__main__":
    main()
