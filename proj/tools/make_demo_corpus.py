#!/usr/bin/env python3
"""Writes small seeded demo corpora (three classes with planted style differences)."""
import argparse
import json
import random

EN = {
    "subjects": ["The council", "The ministry", "A regional court", "The central bank", "Local officials",
                 "The health agency", "Researchers at the university", "The electoral board"],
    "verbs": ["announced", "reported", "confirmed", "published", "reviewed", "approved", "described"],
    "objects": ["a new budget plan", "the annual report", "changes to the transport network",
                "the results of a survey", "an updated schedule", "the findings of an audit"],
    "tails": ["after a meeting on Tuesday", "according to a statement", "in a press release",
              "following months of consultation", "with support from several partners"],
    "shock": ["SHOCKING", "BREAKING", "UNBELIEVABLE", "EXPOSED"],
    "rants": ["They never tell you the truth", "You will not believe this", "Everyone is talking about it",
              "This is a disaster", "Share this before it is deleted", "Nobody wants you to know"],
    "satire": ["I think we finally understand", "We asked a man who says he is an expert",
               "My neighbour claims he saw everything", "We feel this is great news for nobody",
               "I am sure the pigeons will be pleased"],
    "language": "en",
}
PT = {
    "subjects": ["O conselho", "O ministério", "Um tribunal regional", "O banco central", "As autoridades locais",
                 "A agência de saúde", "Pesquisadores da universidade", "O tribunal eleitoral"],
    "verbs": ["anunciou", "informou", "confirmou", "publicou", "revisou", "aprovou", "descreveu"],
    "objects": ["um novo plano de orçamento", "o relatório anual", "mudanças na rede de transporte",
                "os resultados de uma pesquisa", "um cronograma atualizado", "as conclusões de uma auditoria"],
    "tails": ["após uma reunião na terça", "segundo um comunicado", "em nota oficial",
              "depois de meses de consulta", "com apoio de vários parceiros"],
    "shock": ["URGENTE", "CHOCANTE", "INACREDITÁVEL", "BOMBA"],
    "rants": ["Eles nunca contam a verdade", "Você não vai acreditar nisso", "Todo mundo está falando disso",
              "Isso é um desastre", "Compartilhe antes que apaguem", "Ninguém quer que você saiba"],
    "satire": ["Eu acho que finalmente entendemos", "Nós perguntamos a um homem que diz ser especialista",
               "Meu vizinho afirma que viu tudo", "Nós sentimos que é ótima notícia para ninguém",
               "Eu tenho certeza que os pombos vão gostar"],
    "language": "pt",
}


def reliable(rng, v):
    title = f"{rng.choice(v['subjects'])} {rng.choice(v['verbs'])} {rng.choice(v['objects'])}"
    sents = [f"{rng.choice(v['subjects'])} {rng.choice(v['verbs'])} {rng.choice(v['objects'])}, "
             f"{rng.choice(v['tails'])}, and the details were made available to the public."
             if v["language"] == "en" else
             f"{rng.choice(v['subjects'])} {rng.choice(v['verbs'])} {rng.choice(v['objects'])}, "
             f"{rng.choice(v['tails'])}, e os detalhes foram divulgados ao público."
             for _ in range(rng.randint(5, 8))]
    return title, " ".join(sents)


def unreliable(rng, v):
    title = f"{rng.choice(v['shock'])}: {rng.choice(v['rants'])}!"
    sents = []
    for _ in range(rng.randint(6, 10)):
        s = rng.choice(v["rants"])
        sents.append(s + rng.choice(["!", "!!", "?!", "!"]))
        if rng.random() < 0.5:
            sents.append(f"{rng.choice(v['shock'])}!")
    return title, " ".join(sents)


def satire(rng, v):
    title = f"{rng.choice(v['satire'])}"
    sents = []
    for _ in range(rng.randint(5, 8)):
        sents.append(f"“{rng.choice(v['satire'])},” {rng.choice(v['subjects']).lower()} "
                     f"{rng.choice(v['verbs'])}.")
    return title, " ".join(sents)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--language", choices=["en", "pt"], default="en")
    ap.add_argument("--per-class", type=int, default=20)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("output")
    a = ap.parse_args()
    v = EN if a.language == "en" else PT
    rng = random.Random(a.seed)
    with open(a.output, "w", encoding="utf-8") as f:
        for label, gen in (("R", reliable), ("U", unreliable), ("S", satire)):
            for i in range(a.per_class):
                title, body = gen(rng, v)
                rec = {"id": f"{a.language}-{label.lower()}{i:03d}", "source": f"demo-{label.lower()}",
                       "language": a.language, "label": label, "title": title, "body": body}
                f.write(json.dumps(rec, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main()
