#!/usr/bin/env python3
"""Regenerate src/conceptminer/data/gazetteer.tsv from the embedded tables."""

from pathlib import Path

# (country, capital) pairs; capitals with several common spellings get extra rows below.
COUNTRY_CAPITALS = [
    ("Afghanistan", "Kabul"), ("Albania", "Tirana"), ("Algeria", "Algiers"),
    ("Andorra", "Andorra la Vella"), ("Angola", "Luanda"), ("Argentina", "Buenos Aires"),
    ("Armenia", "Yerevan"), ("Australia", "Canberra"), ("Austria", "Vienna"),
    ("Azerbaijan", "Baku"), ("Bahamas", "Nassau"), ("Bahrain", "Manama"),
    ("Bangladesh", "Dhaka"), ("Barbados", "Bridgetown"), ("Belarus", "Minsk"),
    ("Belgium", "Brussels"), ("Belize", "Belmopan"), ("Benin", "Porto-Novo"),
    ("Bhutan", "Thimphu"), ("Bolivia", "Sucre"), ("Bosnia and Herzegovina", "Sarajevo"),
    ("Botswana", "Gaborone"), ("Brazil", "Brasilia"), ("Brunei", "Bandar Seri Begawan"),
    ("Bulgaria", "Sofia"), ("Burkina Faso", "Ouagadougou"), ("Burundi", "Gitega"),
    ("Cambodia", "Phnom Penh"), ("Cameroon", "Yaounde"), ("Canada", "Ottawa"),
    ("Cape Verde", "Praia"), ("Central African Republic", "Bangui"), ("Chad", "N'Djamena"),
    ("Chile", "Santiago"), ("China", "Beijing"), ("Colombia", "Bogota"),
    ("Comoros", "Moroni"), ("Costa Rica", "San Jose"), ("Croatia", "Zagreb"),
    ("Cuba", "Havana"), ("Cyprus", "Nicosia"), ("Czech Republic", "Prague"),
    ("Denmark", "Copenhagen"), ("Djibouti", "Djibouti City"), ("Dominica", "Roseau"),
    ("Dominican Republic", "Santo Domingo"), ("Ecuador", "Quito"), ("Egypt", "Cairo"),
    ("El Salvador", "San Salvador"), ("Equatorial Guinea", "Malabo"), ("Eritrea", "Asmara"),
    ("Estonia", "Tallinn"), ("Eswatini", "Mbabane"), ("Ethiopia", "Addis Ababa"),
    ("Fiji", "Suva"), ("Finland", "Helsinki"), ("France", "Paris"),
    ("Gabon", "Libreville"), ("Gambia", "Banjul"), ("Georgia", "Tbilisi"),
    ("Germany", "Berlin"), ("Ghana", "Accra"), ("Greece", "Athens"),
    ("Grenada", "St. George's"), ("Guatemala", "Guatemala City"), ("Guinea", "Conakry"),
    ("Guinea-Bissau", "Bissau"), ("Guyana", "Georgetown"), ("Haiti", "Port-au-Prince"),
    ("Honduras", "Tegucigalpa"), ("Hungary", "Budapest"), ("Iceland", "Reykjavik"),
    ("India", "New Delhi"), ("Indonesia", "Jakarta"), ("Iran", "Tehran"),
    ("Iraq", "Baghdad"), ("Ireland", "Dublin"), ("Israel", "Jerusalem"),
    ("Italy", "Rome"), ("Ivory Coast", "Yamoussoukro"), ("Jamaica", "Kingston"),
    ("Japan", "Tokyo"), ("Jordan", "Amman"), ("Kazakhstan", "Astana"),
    ("Kenya", "Nairobi"), ("Kiribati", "Tarawa"), ("Kosovo", "Pristina"),
    ("Kuwait", "Kuwait City"), ("Kyrgyzstan", "Bishkek"), ("Laos", "Vientiane"),
    ("Latvia", "Riga"), ("Lebanon", "Beirut"), ("Lesotho", "Maseru"),
    ("Liberia", "Monrovia"), ("Libya", "Tripoli"), ("Liechtenstein", "Vaduz"),
    ("Lithuania", "Vilnius"), ("Luxembourg", "Luxembourg City"), ("Madagascar", "Antananarivo"),
    ("Malawi", "Lilongwe"), ("Malaysia", "Kuala Lumpur"), ("Maldives", "Male"),
    ("Mali", "Bamako"), ("Malta", "Valletta"), ("Marshall Islands", "Majuro"),
    ("Mauritania", "Nouakchott"), ("Mauritius", "Port Louis"), ("Mexico", "Mexico City"),
    ("Micronesia", "Palikir"), ("Moldova", "Chisinau"), ("Monaco", "Monaco"),
    ("Mongolia", "Ulaanbaatar"), ("Montenegro", "Podgorica"), ("Morocco", "Rabat"),
    ("Mozambique", "Maputo"), ("Myanmar", "Naypyidaw"), ("Namibia", "Windhoek"),
    ("Nauru", "Yaren"), ("Nepal", "Kathmandu"), ("Netherlands", "Amsterdam"),
    ("New Zealand", "Wellington"), ("Nicaragua", "Managua"), ("Niger", "Niamey"),
    ("Nigeria", "Abuja"), ("North Korea", "Pyongyang"), ("North Macedonia", "Skopje"),
    ("Norway", "Oslo"), ("Oman", "Muscat"), ("Pakistan", "Islamabad"),
    ("Palau", "Ngerulmud"), ("Panama", "Panama City"), ("Papua New Guinea", "Port Moresby"),
    ("Paraguay", "Asuncion"), ("Peru", "Lima"), ("Philippines", "Manila"),
    ("Poland", "Warsaw"), ("Portugal", "Lisbon"), ("Qatar", "Doha"),
    ("Romania", "Bucharest"), ("Russia", "Moscow"), ("Rwanda", "Kigali"),
    ("Saint Lucia", "Castries"), ("Samoa", "Apia"), ("San Marino", "San Marino"),
    ("Saudi Arabia", "Riyadh"), ("Senegal", "Dakar"), ("Serbia", "Belgrade"),
    ("Seychelles", "Victoria"), ("Sierra Leone", "Freetown"), ("Singapore", "Singapore"),
    ("Slovakia", "Bratislava"), ("Slovenia", "Ljubljana"), ("Solomon Islands", "Honiara"),
    ("Somalia", "Mogadishu"), ("South Africa", "Pretoria"), ("South Korea", "Seoul"),
    ("South Sudan", "Juba"), ("Spain", "Madrid"), ("Sri Lanka", "Colombo"),
    ("Sudan", "Khartoum"), ("Suriname", "Paramaribo"), ("Sweden", "Stockholm"),
    ("Switzerland", "Bern"), ("Syria", "Damascus"), ("Taiwan", "Taipei"),
    ("Tajikistan", "Dushanbe"), ("Tanzania", "Dodoma"), ("Thailand", "Bangkok"),
    ("Timor-Leste", "Dili"), ("Togo", "Lome"), ("Tonga", "Nuku'alofa"),
    ("Trinidad and Tobago", "Port of Spain"), ("Tunisia", "Tunis"), ("Turkey", "Ankara"),
    ("Turkmenistan", "Ashgabat"), ("Tuvalu", "Funafuti"), ("Uganda", "Kampala"),
    ("Ukraine", "Kyiv"), ("United Arab Emirates", "Abu Dhabi"), ("United Kingdom", "London"),
    ("United States", "Washington"), ("Uruguay", "Montevideo"), ("Uzbekistan", "Tashkent"),
    ("Vanuatu", "Port Vila"), ("Vatican City", "Vatican City"), ("Venezuela", "Caracas"),
    ("Vietnam", "Hanoi"), ("Yemen", "Sanaa"), ("Zambia", "Lusaka"),
    ("Zimbabwe", "Harare"),
]

# Additional well-known cities (incl. the German tech corridor the demo data uses).
EXTRA_CITIES = [
    "Kaiserslautern", "Hamburg", "Munich", "Frankfurt", "Cologne", "Stuttgart",
    "Dresden", "Leipzig", "Heidelberg", "Karlsruhe", "Saarbruecken", "Mannheim",
    "Nuremberg", "Bremen", "Hannover", "Duesseldorf", "Bonn", "Aachen", "Trier",
    "Mainz", "Darmstadt", "Augsburg", "Regensburg", "Wuerzburg", "Freiburg",
    "New York", "York", "Los Angeles", "San Francisco", "Chicago", "Boston",
    "Seattle", "Austin", "Denver", "Toronto", "Vancouver", "Montreal",
    "Barcelona", "Milan", "Turin", "Naples", "Venice", "Florence", "Lyon",
    "Marseille", "Toulouse", "Nice", "Rotterdam", "The Hague", "Eindhoven",
    "Antwerp", "Ghent", "Zurich", "Geneva", "Basel", "Lausanne", "Graz",
    "Linz", "Salzburg", "Innsbruck", "Krakow", "Wroclaw", "Gdansk", "Poznan",
    "Brno", "Ostrava", "Porto", "Seville", "Valencia", "Bilbao", "Manchester",
    "Birmingham", "Leeds", "Glasgow", "Edinburgh", "Liverpool", "Bristol",
    "Oxford", "Cambridge", "Gothenburg", "Malmo", "Bergen", "Aarhus",
    "Tampere", "Turku", "Shanghai", "Shenzhen", "Guangzhou", "Hong Kong",
    "Osaka", "Kyoto", "Nagoya", "Yokohama", "Busan", "Mumbai", "Bangalore",
    "Chennai", "Hyderabad", "Pune", "Kolkata", "Sydney", "Melbourne",
    "Brisbane", "Perth", "Auckland", "Sao Paulo", "Rio de Janeiro",
    "Buenos Aires", "Medellin", "Monterrey", "Guadalajara", "Johannesburg",
    "Cape Town", "Durban", "Casablanca", "Alexandria", "Istanbul", "Izmir",
    "Saint Petersburg", "Novosibirsk", "Kharkiv", "Lviv", "Odesa",
]

ALIASES = [
    ("USA", "United States"), ("U.S.A.", "United States"), ("UK", "United Kingdom"),
    ("UAE", "United Arab Emirates"), ("Holland", "Netherlands"),
    ("Deutschland", "Germany"), ("Muenchen", "Munich"), ("Koeln", "Cologne"),
    ("Wien", "Vienna"), ("Zuerich", "Zurich"), ("Praha", "Prague"),
    ("Warszawa", "Warsaw"), ("Moskva", "Moscow"), ("Roma", "Rome"),
    ("Milano", "Milan"), ("Lisboa", "Lisbon"), ("Bruxelles", "Brussels"),
    ("Kobenhavn", "Copenhagen"), ("NYC", "New York"),
]


def main() -> None:
    rows: list[tuple[str, str, str]] = []
    seen = set()

    def add(surface: str, canonical: str) -> None:
        key = surface.lower()
        if key in seen:
            return
        seen.add(key)
        rows.append((surface, "place", canonical))

    for country, capital in COUNTRY_CAPITALS:
        add(country, country)
        add(capital, capital)
    for city in EXTRA_CITIES:
        add(city, city)
    for alias, canonical in ALIASES:
        add(alias, canonical)

    out = Path(__file__).resolve().parents[1] / "src" / "conceptminer" / "data" / "gazetteer.tsv"
    lines = ["# surface\ttype\tcanonical label"]
    lines += [f"{s}\t{t}\t{c}" for s, t, c in rows]
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(rows)} entries to {out}")


if __name__ == "__main__":
    main()
