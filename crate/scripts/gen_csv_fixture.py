"""Writes an RFC 4180 edge-case CSV and the rows Python's csv module reads
from it. Run from the repository root."""
import csv
import json

OUT = "crates/core/tests/fixtures"

RAW = (
    'EID,Title,Abstract,Year,Source title,Cited by,Author count\r\n'
    'e1,Plain title,Plain abstract.,2015,J One,3,2\r\n'
    'e2,"Title, with comma","Abstract with ""quoted"" words.",2016,J One,0,1\r\n'
    'e3,"Multi\r\nline title","Line one.\nLine two.",2017,"J, Two",12,4\r\n'
    'e4,Missing abstract,,2018,J One,,\r\n'
    'e5,No year,Some text.,,J One,1,1\r\n'
    'e6,,Abstract of a row without title.,2019,J One,5,2\r\n'
    'e7,Ünïcödé títle – dash,Résumé ñ.,2020,Revista,7,3\r\n'
    'e8,"""Quoted"" start",Text.,2010,J One,2,2\r\n'
    'e9,  Padded title  ,  padded abstract  ,2011,J One,4,1\r\n'
    'e10,Last row without newline,End.,2012,J One,9,6'
)


def main():
    with open(f"{OUT}/rfc4180_10.csv", "w", newline="", encoding="utf-8") as f:
        f.write(RAW)
    with open(f"{OUT}/rfc4180_10.csv", newline="", encoding="utf-8") as f:
        rows = list(csv.DictReader(f))
    with open(f"{OUT}/rfc4180_10.expected.json", "w", encoding="utf-8") as f:
        json.dump(rows, f, ensure_ascii=False, indent=1)
        f.write("\n")


if __name__ == "__main__":
    main()
