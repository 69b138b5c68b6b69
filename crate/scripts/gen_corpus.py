#!/usr/bin/env python3
"""Regenerates the synthetic detector corpora under data/.

Deterministic: every random choice flows from SEED. Utterances used in the
benign/attack transcripts are drawn from pools disjoint from the labelled
training corpus, so detector results are not measured on training data.

    python3 scripts/gen_corpus.py [--seed N] [out_dir]
"""

import argparse
import json
import random
from pathlib import Path

SEED = 42

# id, invocation name, display name, category, description, welcome prompt,
# skill responses, on-topic utterances
SKILLS = [
    dict(
        id="sleep-sounds",
        name="sleep sounds",
        display="Sleep and Relaxation Sounds",
        category="Health & Fitness",
        description=[
            "Play relaxing sleep sounds to help you fall asleep.",
            "Choose from rain, thunderstorm, ocean waves, fan, fireplace and white noise.",
            "Each sound loops all night until you ask it to stop.",
            "Set a sleep timer so the sound fades out after a while.",
            "Ask for a random sound when you cannot decide.",
            "Mix two ambient sounds together for a custom blend.",
            "Popular sounds include heavy rain, thunder, crickets, rivers, campfire, wind, brook and forest ambience.",
            "Use brown noise or pink noise to mask snoring and street noise.",
            "Say a sound name at any time to switch to it, or ask for a softer or louder mix.",
            "Nature sounds like birds at night and rainforest are great for naps and babies.",
        ],
        welcome="Hello, welcome to soothing sleep sounds. Which sleep sound would you like today?",
        responses=[
            "Which sleep sound would you like today?",
            "Sorry, I do not understand. Which sound do you want today?",
            "Playing thunderstorm sounds. Sleep well.",
            "Here is gentle rain on a tin roof.",
            "Ocean waves are now looping.",
            "Your sound will fade out in thirty minutes.",
            "Mixing rain with a crackling fireplace.",
            "Would you like rain, ocean or white noise?",
        ],
        utterances=[
            "play thunderstorm sounds", "play rain", "rain on a tin roof please", "ocean waves",
            "I want white noise", "the fan sound", "play the fireplace", "crackling fireplace please",
            "something random", "give me a random sound", "mix rain and thunder", "mix ocean with fan",
            "fade out after an hour", "set the sleep timer to thirty minutes", "loop it all night",
            "play heavy rain", "gentle rain please", "thunder", "can I hear the waves",
            "brown noise", "pink noise please", "forest sounds", "play a babbling brook",
            "wind through the trees", "rainforest sounds", "play crickets", "a softer sound",
            "play a thunderstorm with rain", "fan noise for sleeping", "play the ocean again",
            "make the rain louder in the mix", "play the campfire sound", "river sounds please",
            "play night birds", "a random relaxing sound", "let the waves loop all night",
        ],
    ),
    dict(
        id="cat-facts",
        name="cat facts",
        display="Cat Facts",
        category="Education & Reference",
        description=[
            "Hear a fun fact about cats every day.",
            "Learn about cat breeds, behavior and history.",
            "Ask for another fact to keep going.",
            "Facts are reviewed by veterinarians.",
            "Discover why cats purr, knead, sleep so much and love boxes.",
            "Facts about kittens, lions, tigers and other big cats are included.",
            "Learn about whiskers, toes, dreams and strange cat habits.",
            "Ask about a breed such as persian, siamese or maine coon.",
        ],
        welcome="Welcome to cat facts. Want to hear a fact about cats?",
        responses=[
            "Want to hear a fact about cats?",
            "Cats sleep for around sixteen hours a day. Want another?",
            "A group of cats is called a clowder. Shall I continue?",
            "Siamese cats are one of the oldest breeds. Another fact?",
            "Cats purr at a frequency that may help heal bones.",
            "Would you like a fact about kittens or about big cats?",
        ],
        utterances=[
            "yes", "sure another one", "tell me a fact about kittens", "another fact",
            "one more fact", "something about big cats", "why do cats purr", "facts about siamese cats",
            "how long do cats sleep", "a fact about cat history", "tell me about cat breeds",
            "more please", "yes about kittens", "why do cats knead", "what about lions",
            "facts about cat whiskers", "how fast can a cat run", "why do cats like boxes",
            "one about persian cats", "how many toes do cats have", "another kitten fact",
            "what is a clowder", "do cats dream", "why are cats afraid of cucumbers", "tell me more", "more cat facts", "go on",
        ],
    ),
    dict(
        id="dog-facts",
        name="dog facts",
        display="Dog Facts",
        category="Education & Reference",
        description=[
            "Get a random fact about dogs.",
            "Learn about puppies, dog breeds and canine history.",
            "Ask for another dog fact whenever you like.",
            "Discover why dogs wag, dig, howl and sleep so much.",
            "Facts about golden retrievers, greyhounds, beagles and the smallest breeds.",
            "Learn how well dogs smell, see colors and hear.",
            "Find out how old the oldest dog lived to be.",
        ],
        welcome="Welcome to dog facts. Ready for a fact about dogs?",
        responses=[
            "Ready for a fact about dogs?",
            "Dogs can smell about forty times better than people. Another?",
            "Puppies are born deaf and blind. Want one more?",
            "The greyhound is the fastest dog breed. Shall I go on?",
            "Would you like a puppy fact or a breed fact?",
        ],
        utterances=[
            "why do dogs sniff everything", "a fact about labradors", "how many teeth do dogs have", "do dogs dream", "why are dog noses wet", "something about sled dogs", "a poodle fact", "another one about puppies",
            "tell me more",
            "yes please", "a puppy fact", "breed fact", "another dog fact", "one more",
            "tell me about greyhounds", "how well can dogs smell", "why do dogs wag their tails",
            "facts about golden retrievers", "a fact about dog history", "why do puppies sleep so much",
            "how fast is a greyhound", "what is the smallest dog breed", "do dogs see colors",
            "more about puppies", "why do dogs howl", "another breed fact", "facts about beagles",
            "how old is the oldest dog", "why do dogs dig", "more dog facts", "keep going", "tell me more about dogs",
        ],
    ),
    dict(
        id="daily-horoscope",
        name="daily horoscope",
        display="Daily Horoscope",
        category="Lifestyle",
        description=[
            "Get your daily horoscope for any zodiac sign.",
            "Hear love, career and health readings.",
            "Ask about compatibility between two signs.",
            "Readings are updated every morning.",
            "Signs include aries, taurus, gemini, cancer, leo, virgo, libra, scorpio, sagittarius, capricorn, aquarius and pisces.",
            "Tell me your sign and your partner's sign to check if you are a match.",
            "Find out whether today is a lucky day.",
        ],
        welcome="Welcome to daily horoscope. What is your zodiac sign?",
        responses=[
            "What is your zodiac sign?",
            "Leo, today favors bold decisions at work. Want your love reading?",
            "Aries and Libra make a lively match. Anything else?",
            "Your career reading says patience pays off this week.",
            "Would you like your love, career or health reading?",
        ],
        utterances=[
            "what does my horoscope say", "today's reading for libra", "weekly horoscope for leo", "my lucky number", "what about my career", "tell me about virgo", "pisces love reading", "read aries again", "and scorpio",
            "tell me more",
            "leo", "I am a scorpio", "virgo please", "my sign is aries", "gemini",
            "love reading", "career reading please", "health", "what about my love life",
            "is aries compatible with libra", "compatibility of leo and virgo", "read taurus",
            "capricorn horoscope", "and for pisces", "my partner is a cancer", "what about sagittarius",
            "read my health horoscope", "is today lucky for leo", "aquarius love reading",
            "career reading for gemini",
        ],
    ),
    dict(
        id="kitchen-helper",
        name="kitchen helper",
        display="Kitchen Helper",
        category="Food & Drink",
        description=[
            "Find recipes using the ingredients you already have.",
            "Walk through each recipe step by step, hands free.",
            "Convert cups, grams and ounces while you cook.",
            "Get substitutions for missing ingredients.",
            "Save favorite recipes for later.",
            "Ask how much salt, sugar or oil a recipe needs.",
            "Get oven temperatures and cooking times for meat, vegetables and desserts.",
            "Search vegetarian dinners, quick desserts, pasta, rice and bean dishes.",
            "Repeat a step, go back, or read the ingredients again at any time.",
        ],
        welcome="Welcome to kitchen helper. What would you like to cook?",
        responses=[
            "What would you like to cook?",
            "I found a chicken curry recipe. Shall we start with the ingredients?",
            "Step two: chop the onions and fry them until golden.",
            "One cup of flour is about one hundred twenty grams.",
            "You can replace buttermilk with milk and a spoon of lemon juice.",
            "Saved to your favorite recipes. Next step?",
        ],
        utterances=[
            "a soup recipe", "what goes with salmon", "how do I make pancakes", "next ingredient", "how long to bake it", "what's step three", "make it for four people", "read the last step", "a recipe with chicken and rice", "how many eggs again", "is there a gluten free version", "how do I know when it's done",
            "chicken curry", "something with pasta and tomatoes", "what can I make with eggs",
            "next step", "repeat that step", "how many grams in a cup of flour",
            "convert two ounces to grams", "I have no buttermilk", "what can replace eggs",
            "save this recipe", "start with the ingredients", "a vegetarian dinner",
            "how long do I fry the onions", "go back one step", "a quick dessert recipe",
            "read the ingredients again", "how much salt", "what temperature for the oven",
            "a recipe with rice and beans", "substitute for butter",
        ],
    ),
    dict(
        id="math-tutor",
        name="math tutor",
        display="Math Tutor",
        category="Education & Reference",
        description=[
            "Practice arithmetic with friendly quizzes.",
            "Choose addition, subtraction, multiplication or division.",
            "Difficulty grows as you answer correctly.",
            "Hear a hint when you are stuck.",
            "Answer out loud with a number such as seven, twenty or one hundred.",
            "Skip a question, repeat it, or ask for easier or harder problems.",
            "Your score and streak are kept for each practice session.",
            "Fractions and times tables practice are also available.",
        ],
        welcome="Welcome to math tutor. Which kind of problems would you like to practice?",
        responses=[
            "Which kind of problems would you like to practice?",
            "What is seven times eight?",
            "Correct! Next, what is forty two divided by six?",
            "Not quite. Hint: try counting by fives.",
            "Great streak. Let's try harder multiplication.",
        ],
        utterances=[
            "multiplication", "fifty six", "seven", "give me a hint", "division please",
            "addition", "is it twelve", "easier problems", "harder ones", "subtraction",
            "forty two", "repeat the question", "I don't know", "one hundred", "skip this one",
            "nine times nine", "practice fractions", "what was my score", "eighty one", "twenty",
            "thirty five", "sixty four", "eight", "twelve", "forty eight", "three", "seventy two",
            "is it nine", "six times seven", "ninety", "fifteen", "twenty four", "one hundred and ten",
        ],
    ),
    dict(
        id="trivia-night",
        name="trivia night",
        display="Trivia Night",
        category="Games & Trivia",
        description=[
            "Play a multiple choice trivia game.",
            "Questions cover history, science, movies and sports.",
            "Answer with the letter of your choice.",
            "Compete for a high score each week.",
            "Say the answer or the letter a, b or c.",
            "Check your score, skip a question or start a new game.",
            "Questions range from easy to hard.",
        ],
        welcome="Welcome to trivia night. Ready for your first question?",
        responses=[
            "Ready for your first question?",
            "Which planet is known as the red planet? A, Venus. B, Mars. C, Jupiter.",
            "Correct! Your score is three. Next question?",
            "Sorry, the answer was B. Want to keep playing?",
            "Pick a category: history, science, movies or sports.",
        ],
        utterances=[
            "a", "d", "is it a", "the answer is c", "geography questions", "music round", "another question", "I give up", "what was the right answer", "play again", "science please",
            "tell me more",
            "ready", "b", "the answer is a", "c", "mars", "science category", "history please",
            "movies", "sports questions", "next question", "what is my score", "repeat the question",
            "I think it's b", "keep playing", "a harder question", "skip", "is it venus",
            "start a new game", "answer c", "the high score",
        ],
    ),
    dict(
        id="daily-calm",
        name="daily calm",
        display="Daily Calm Meditation",
        category="Health & Fitness",
        description=[
            "Guided meditations for stress, focus and sleep.",
            "Sessions last from three to twenty minutes.",
            "Try breathing exercises and body scans.",
            "Track your meditation streak.",
            "Meditate for five, ten or twenty minutes.",
            "Relax and reduce anxiety with gentle guidance.",
            "Sessions for sleep, focus at work and stress relief.",
            "Start again whenever you want.",
        ],
        welcome="Welcome to daily calm. How long would you like to meditate?",
        responses=[
            "How long would you like to meditate?",
            "Let's begin a ten minute breathing session. Breathe in slowly.",
            "Notice your shoulders and let them relax.",
            "You have a five day meditation streak.",
            "Would you like a session for focus, stress or sleep?",
        ],
        utterances=[
            "a calming session", "meditate for ten minutes", "a sleep meditation", "breathing for anxiety", "start my daily calm session", "something relaxing", "a morning meditation", "ten more minutes", "a session for focus", "how long was my session",
            "ten minutes", "five minutes please", "a session for stress", "focus", "something for sleep",
            "breathing exercise", "a body scan", "what is my streak", "a short meditation",
            "twenty minute session", "start the breathing session", "help me relax",
            "guided meditation for anxiety", "three minutes", "a longer session", "again please",
            "meditation for focus at work", "body scan for sleep",
        ],
    ),
    dict(
        id="bedtime-stories",
        name="bedtime stories",
        display="Bedtime Stories",
        category="Kids",
        description=[
            "Classic and original bedtime stories for children.",
            "Pick adventures, animals or fairy tales.",
            "Stories last about five minutes.",
            "Ask for the same story again any night.",
            "Stories about bears, princesses, pirates, space, dragons and foxes.",
            "Favorites include goldilocks, the three little pigs and the golden key.",
            "Ask for a short, funny or long story.",
        ],
        welcome="Welcome to bedtime stories. Would you like an adventure, an animal story or a fairy tale?",
        responses=[
            "Would you like an adventure, an animal story or a fairy tale?",
            "Once upon a time, a little fox found a golden key.",
            "The end. Would you like another story?",
            "Here is the story of the three little pigs.",
            "Shall I read the dragon story again?",
        ],
        utterances=[
            "a story about a dragon", "little red riding hood", "a story about friendship", "read it again", "a bedtime story about the ocean", "the fox story", "a story with a happy ending", "a short fairy tale", "what happens next", "a story about a brave knight",
            "tell me more",
            "an animal story", "fairy tale please", "adventure", "the one about the fox",
            "another story", "the three little pigs", "read the dragon story again", "a short story",
            "a story about a princess", "story about space", "a funny story", "one more story",
            "the golden key story", "a story about a bear", "goldilocks please", "a pirate adventure",
        ],
    ),
    dict(
        id="spanish-lessons",
        name="spanish lessons",
        display="Spanish Lessons",
        category="Education & Reference",
        description=[
            "Learn Spanish vocabulary and phrases.",
            "Practice pronunciation with short drills.",
            "Lessons cover greetings, food, travel and numbers.",
            "Review words you found difficult.",
            "Ask how to say a word such as water, thank you or the bill.",
            "Learn what common words like gracias, agua, pan and manzana mean.",
            "Repeat a word, go to the next word or review the lesson.",
            "Count to ten and practice everyday phrases.",
        ],
        welcome="Welcome to spanish lessons. Which topic shall we practice?",
        responses=[
            "Which topic shall we practice?",
            "How do you say apple in Spanish?",
            "Correct, manzana. Next word: bread.",
            "Repeat after me: buenos dias.",
            "Let's review the travel phrases.",
        ],
        utterances=[
            "colors", "how do you say hello", "what does agua mean", "animals lesson", "family words", "quiz me", "say it slower", "how do you say good night", "the food lesson", "perro", "next phrase",
            "greetings", "food words", "travel phrases", "numbers", "manzana", "pan",
            "buenos dias", "how do you say thank you", "repeat the word", "next word",
            "review difficult words", "what does gracias mean", "practice pronunciation",
            "how do you say water", "agua", "teach me the numbers to ten", "the travel lesson",
            "how do I ask for the bill",
        ],
    ),
    dict(
        id="plant-doctor",
        name="plant doctor",
        display="Plant Doctor",
        category="Home",
        description=[
            "Diagnose problems with houseplants.",
            "Get watering, light and soil advice for each plant.",
            "Learn how to repot and fertilize.",
            "Set care reminders for your plants.",
            "Help with yellow leaves, brown tips, white spots, curling, drooping and wilting.",
            "Care guides for ferns, pothos, monstera, orchids, cactus, succulents, basil and snake plants.",
            "Learn to spot and treat root rot.",
            "Find out how often to water and how much light each plant needs.",
        ],
        welcome="Welcome to plant doctor. Which plant needs help?",
        responses=[
            "Which plant needs help?",
            "Yellow leaves on a pothos usually mean too much water.",
            "Ferns like bright indirect light and moist soil.",
            "Repot when roots grow out of the drainage holes.",
            "What symptoms do you see on the leaves?",
        ],
        utterances=[
            "my succulent is soft", "how much water for a fern", "my orchid lost its flowers", "yellow leaves on my basil", "the snake plant", "is my cactus getting too much sun", "when should I fertilize", "spots on my monstera", "how do I propagate pothos", "the leaves are falling off",
            "tell me more",
            "my fern", "a pothos with yellow leaves", "brown tips on the leaves", "how often should I water a cactus",
            "the monstera", "when should I repot", "what fertilizer for orchids", "drooping leaves",
            "how much light for a snake plant", "my basil is wilting", "white spots on the leaves",
            "best soil for succulents", "remind me to water the fern", "root rot", "the orchid",
            "leaves are curling",
        ],
    ),
    dict(
        id="guitar-tuner",
        name="guitar tuner",
        display="Guitar Tuner",
        category="Music & Audio",
        description=[
            "Tune your guitar by ear with reference notes.",
            "Standard, drop D and open tunings.",
            "Each string note repeats until you say next.",
            "Play each string: low e, a, d, g, b and high e.",
            "Go back a string or repeat a note as often as you need.",
            "Also supports half step down and open g tuning.",
        ],
        welcome="Welcome to guitar tuner. Which tuning do you want?",
        responses=[
            "Which tuning do you want?",
            "Here is the low E string.",
            "Now the A string. Say next when ready.",
            "Switching to drop D tuning.",
        ],
        utterances=[
            "the g string", "tune the low e", "standard tuning please", "next one", "the a string", "play it again", "drop c tuning", "previous string", "is it in tune", "the high e string", "tune to d",
            "standard tuning", "drop d", "next string", "the low e", "repeat the a string",
            "open g tuning", "next", "play the b string", "high e again", "go back a string",
            "the d string", "half step down tuning", "again",
        ],
    ),
    dict(
        id="space-facts",
        name="space facts",
        display="Space Facts",
        category="Education & Reference",
        description=[
            "Amazing facts about planets, stars and galaxies.",
            "Learn about astronauts and space missions.",
            "Ask about a specific planet.",
            "Explore mercury, venus, earth, mars, jupiter, saturn, neptune and pluto.",
            "Learn about the sun, the moon, black holes, nebulas and the milky way.",
            "Hear about europa and other moons, and how far away each planet is.",
            "Stories of the apollo missions and famous astronauts.",
        ],
        welcome="Welcome to space facts. Which planet shall we explore?",
        responses=[
            "Which planet shall we explore?",
            "A day on Venus is longer than its year. Another fact?",
            "Jupiter has dozens of moons. Want to hear about Europa?",
            "The Apollo eleven mission landed on the moon in nineteen sixty nine.",
        ],
        utterances=[
            "a fact about venus", "how hot is the sun", "another fact", "what is a black hole", "saturn's rings", "how many moons does jupiter have", "a fact about comets", "the space station", "mars please", "how old is the universe", "one more space fact",
            "jupiter", "tell me about saturn", "a fact about black holes", "astronauts",
            "another space fact", "yes tell me about europa", "the apollo missions", "how far is mars",
            "facts about the sun", "neptune", "how big is the milky way", "what is a nebula",
            "a fact about the moon", "pluto", "tell me more", "more space facts", "continue",
        ],
    ),
    dict(
        id="joke-of-the-day",
        name="joke of the day",
        display="Joke of the Day",
        category="Novelty & Humor",
        description=[
            "A new family friendly joke every day.",
            "Ask for knock knock jokes, puns or riddles.",
            "Rate jokes to get more of what you like.",
            "Puns, riddles for kids and silly knock knock jokes.",
            "Say who's there to play along with a knock knock joke.",
            "Ask for one more if you liked it, or rate it with stars.",
        ],
        welcome="Welcome to joke of the day. Want a pun, a riddle or a knock knock joke?",
        responses=[
            "Want a pun, a riddle or a knock knock joke?",
            "Why did the scarecrow win an award? Because he was outstanding in his field.",
            "Knock knock.",
            "Thanks for rating. Another joke?",
        ],
        utterances=[
            "another joke", "a dad joke", "tell me a pun", "a joke about cats", "what's the punchline", "one more joke", "a funny riddle", "tell it again", "a joke for kids", "something funny", "a science joke", "ha ha another",
            "a pun", "riddle please", "knock knock", "who's there", "another one", "that was funny",
            "rate it five stars", "a knock knock joke", "something silly", "I don't get it",
            "a riddle for kids", "one more pun",
        ],
    ),
    dict(
        id="this-day-in-history",
        name="this day in history",
        display="This Day in History",
        category="Education & Reference",
        description=[
            "Hear what happened on this date in history.",
            "Events, famous births and notable discoveries.",
            "Ask about any other date.",
            "Ask about any day, such as july fourth or the first of may.",
            "Hear who was born today and famous events from any century or year.",
            "Get more events for the same date.",
        ],
        welcome="Welcome to this day in history. Shall I tell you today's events?",
        responses=[
            "Shall I tell you today's events?",
            "On this day in seventeen seventy six, the declaration of independence was signed.",
            "Famous births today include a renowned painter. Want more?",
            "Which date would you like to hear about?",
        ],
        utterances=[
            "what happened on this day", "famous events today", "history for june sixth", "who died today", "events in nineteen forty five", "anything about space", "what happened in world war two", "next event", "tell me about today", "another event",
            "tell me more",
            "yes today's events", "famous births", "what about july fourth", "any discoveries",
            "tell me about march third", "more events", "another date", "who was born today",
            "events from the nineteenth century", "what happened in nineteen sixty nine",
            "the first of may", "more", "go on please", "keep going",
        ],
    ),
    dict(
        id="seven-minute-workout",
        name="seven minute workout",
        display="Seven Minute Workout",
        category="Health & Fitness",
        description=[
            "A quick full body workout in seven minutes.",
            "Twelve exercises with thirty seconds each.",
            "Beginner and advanced circuits available.",
            "Track how many workouts you complete.",
            "Exercises include jumping jacks, wall sit, push ups, plank, squats and lunges.",
            "Pause, skip, repeat an exercise or rest longer.",
            "Easier versions are available for every exercise.",
            "Say ready to start the next exercise.",
        ],
        welcome="Welcome to seven minute workout. Beginner or advanced circuit?",
        responses=[
            "Beginner or advanced circuit?",
            "First exercise: jumping jacks for thirty seconds. Go!",
            "Rest for ten seconds. Next up, wall sit.",
            "Great job, you finished the circuit.",
        ],
        utterances=[
            "start the workout", "intermediate", "resume", "how long is this exercise", "skip jumping jacks", "a harder circuit", "next", "repeat that exercise", "an easier workout", "how many calories", "let's go", "start over",
            "beginner", "advanced circuit", "pause the exercise", "next exercise", "skip push ups",
            "how many workouts have I done", "start the circuit", "what's the next exercise",
            "rest longer", "repeat the plank", "an easier version", "I'm ready",
        ],
    ),
]

SYSCMDS = [
    "stop", "cancel", "exit", "quit", "pause", "resume", "goodbye alexa", "alexa stop",
    "what time is it", "what's the time", "what's today's date",
    "what's the weather", "what's the weather forecast for this week", "will it rain tomorrow",
    "is it going to snow", "what's the temperature outside",
    "what's in the news", "read me the headlines", "play my flash briefing", "show me the news",
    "set a timer for ten minutes", "set an alarm for seven am", "wake me up at six", "cancel the timer",
    "how much time is left on my timer", "remind me to call the doctor",
    "turn up the volume", "turn down the volume", "volume up", "volume down", "louder", "quieter", "mute",
    "turn off the lights", "turn on the lights", "turn off the tv", "turn off bluetooth",
    "lock the front door", "set the thermostat to seventy degrees",
    "play music", "play amazon music", "play the next song", "play my playlist",
    "add milk to my shopping list", "order more coffee", "where is my package",
    "what's on my calendar", "call mom", "call my wife", "make a phone call", "hang up", "answer the call",
    "send a message to dad", "send a text", "drop in on the kitchen",
    "who won the game", "how tall is mount everest", "how do you spell restaurant",
    "tell me a quote", "I'm home", "what's up",
    "open <name>", "launch <name>", "start <name>", "ask <name>", "open <name> please", "play some <name>",
]

BLACKLIST = [
    "<silence>",
    "Goodbye.",
    "Goodbye, see you next time.",
    "Okay, goodbye.",
    "Bye for now.",
    "Bye.",
    "Farewell.",
    "Exiting the skill now.",
    "The session has ended.",
    "Alexa is stopping.",
    "Sure, here is the skill you requested.",
    "Here's your skill, opening it now.",
    "Opening your requested skill.",
    "Launching the application you asked for.",
    "Welcome back to your assistant, how can I help you?",
    "What can I help you with?",
    "I recommend you try a different skill.",
    "You might also like this new skill from the store.",
    "Your device needs to verify your account password.",
    "Please tell me your account password to continue.",
    "Volume set to five.",
    "Your timer has been set.",
]

# Rewrites for calibration: framing words around each entry plus one-word swaps.
RESPONSE_VARIANTS = {
    "prefixes": ["okay", "alright", "sure", "all right then"],
    "suffixes": ["now", "then", "thanks", "please"],
    "synonyms": [
        ["goodbye", "farewell"],
        ["skill", "app"],
        ["opening", "starting"],
        ["requested", "wanted"],
        ["recommend", "suggest"],
        ["password", "passcode"],
        ["ended", "finished"],
        ["stopping", "closing"],
        ["help", "assist"],
    ],
}

# Context switches. `{skill}` is another catalog skill, `{city}`/`{n}` fillers.
SWITCH_TEMPLATES = [
    "what's the weather in {city}", "what's the weather like today", "will it rain in {city} tomorrow",
    "what's the forecast for this weekend", "how cold is it outside", "is it going to snow",
    "what time is it", "what time is it in {city}", "tell me the time", "what's the date today",
    "what's in the news", "read me the headlines", "play my flash briefing", "news from {city}",
    "set a timer for {n} minutes", "set an alarm for {n} o'clock", "how long is left on the timer",
    "cancel my alarm", "wake me up at {n}",
    "turn up the volume", "volume {n}", "turn it down", "louder", "mute the speaker",
    "turn off the kitchen lights", "turn on the living room lights", "dim the bedroom lights",
    "turn off the tv", "turn on bluetooth", "lock the front door", "set the thermostat to {n} degrees",
    "play some jazz music", "play my workout playlist", "skip this song", "play the radio",
    "add eggs to my shopping list", "what's on my calendar tomorrow", "call {person}", "send a message to {person}", "text {person}", "call {person} on speaker",
    "open {skill}", "open {skill} please", "launch {skill}", "start {skill}", "ask {skill} for help",
    "open {skill} for me", "play some {skill}", "open the {skill} app", "alexa open {skill}",
    "stop", "cancel", "exit", "alexa stop", "goodbye alexa", "quit", "alexa what's up", "alexa",
    "how tall is the eiffel tower", "who won the game last night", "order more paper towels",
    "where is my package", "how do you spell necessary",
    "what's the weather going to be in {city}", "how hot will it be in {city}", "set a timer for {n} seconds",
    "remind me in {n} minutes", "what's the traffic like", "how long is my commute", "play the news",
    "message {person}", "call {person} please", "ring {person}", "video call {person}",
    "turn the lights off", "set the lights to {n} percent", "what's the score of the game",
    "what's my next appointment", "add {n} eggs to my shopping list", "resume my audiobook",
    "alexa open {skill}", "ask {skill} something else", "switch to {skill}", "go to {skill}",
]

APPENDIX_SWITCHES = [
    "Switch off the TV.", "What time?", "What is the week's forecast?", "Show me the news.",
    "Turn off Bluetooth.", "Goodbye, Alexa.", "I meant walk back to the timer.", "Amazon music.",
    "What's the weather in Northridge?", "What's in the news?", "I'm home.",
    "Tell me a quote.", "What was the time?", "What's my flash briefing?",
]
APPENDIX_PRIORS = [
    "Hello, welcome to soothing sleep sounds. Which sleep sound would you like today?",
    "Sorry, I do not understand. Which sound do you want today?",
    "Hello, welcome to my sleep sounds. Which sleep sound would you like today?",
]

# In-skill replies users give to almost any skill; a few go into each skill's training set.
GENERIC_CONTINUATIONS = [
    "yes", "yes please", "sure", "okay", "tell me more", "keep going", "go on", "one more",
    "another one", "more please", "what else", "repeat that", "say that again", "no thanks",
]

PEOPLE = ["mom", "dad", "grandma", "my brother", "john", "sarah", "the office"]
CITIES = ["seattle", "boston", "chicago", "denver", "austin", "miami", "portland", "phoenix", "dallas"]

# Attack injections: switch utterances for the user, fake-termination responses for the skill.
ATTACK_SWITCHES = [
    "open sleep sounds please", "what's the weather in san diego", "set a timer for twenty minutes",
    "turn off the hallway lights", "what's the news today", "open cat facts", "play some daily calm",
    "alexa what time is it", "turn the volume down", "launch trivia night", "what's the forecast for tomorrow",
    "add bread to my shopping list", "alexa stop", "open the plant doctor app", "call my sister",
]
FAKE_TERMINATIONS = [
    "",
    "<speak><audio src=\"https://cdn.example.com/silence-90s.mp3\"/></speak>",
    "Goodbye!",
    "   ",
    "Okay, goodbye for now.",
    "<speak><break time=\"10s\"/></speak>",
    "Goodbye, see you next time!",
    "<speak><audio src=\"https://cdn.example.com/silence-60s.mp3\"/></speak>",
    "Alright, the session has ended.",
    "",
]


def fill(template, rng, skill_names):
    return template.format(
        city=rng.choice(CITIES),
        n=rng.choice(["five", "ten", "fifteen", "seven", "eight", "twenty"]),
        skill=rng.choice(skill_names),
        person=rng.choice(PEOPLE),
    )


def main(out, seed=SEED):
    rng = random.Random(seed)
    out.mkdir(parents=True, exist_ok=True)
    names = [s["name"] for s in SKILLS]

    # Hold out a third of each skill's utterances for the transcripts.
    held_out = {}
    train_pool = {}
    for s in SKILLS:
        u = list(s["utterances"])
        rng.shuffle(u)
        k = max(4, len(u) // 3)
        held_out[s["id"]] = u[:k]
        train_pool[s["id"]] = u[k:]

    with open(out / "skills.jsonl", "w") as f:
        for s in SKILLS:
            f.write(json.dumps(record_of(s)) + "\n")

    (out / "syscmds.txt").write_text(
        "# System commands; <name> expands to every catalog invocation name.\n" + "\n".join(SYSCMDS) + "\n"
    )
    (out / "blacklist.txt").write_text(
        "# Responses a skill must not give; <silence> is the silent response.\n" + "\n".join(BLACKLIST) + "\n"
    )
    (out / "response-variants.json").write_text(json.dumps(RESPONSE_VARIANTS, indent=2) + "\n")

    # Labelled corpus: every held-in on-topic utterance once, plus switches to balance.
    labels = []
    for s in SKILLS:
        for u in train_pool[s["id"]]:
            labels.append(dict(utterance=u, prior_response=rng.choice(s["responses"]), skill_id=s["id"], label="no-switch"))
    for s in SKILLS:
        for u in rng.sample(GENERIC_CONTINUATIONS, 6):
            labels.append(dict(utterance=u, prior_response=rng.choice(s["responses"]), skill_id=s["id"], label="no-switch"))
    no_switch = len(labels)
    for u, prior in zip(APPENDIX_SWITCHES, APPENDIX_PRIORS * 5):
        labels.append(dict(utterance=u, prior_response=prior, skill_id="sleep-sounds", label="switch"))
    seen = {l["utterance"].lower() for l in labels}
    attempts = 0
    while sum(1 for l in labels if l["label"] == "switch") < no_switch:
        attempts += 1
        if attempts > 200_000:
            raise SystemExit("not enough distinct switch utterances to balance the corpus")
        s = rng.choice(SKILLS)
        # Re-invoking the running skill by name also leaves it (the user believes another skill is running).
        template = rng.choice(SWITCH_TEMPLATES)
        # Every third skill-launch switch names the running skill itself.
        own = [s["name"]] if "{skill}" in template and rng.random() < 1 / 3 else names
        u = fill(template, rng, own)
        if u.lower() in seen or u in ATTACK_SWITCHES:
            continue
        seen.add(u.lower())
        labels.append(dict(utterance=u, prior_response=rng.choice(s["responses"]), skill_id=s["id"], label="switch"))
    rng.shuffle(labels)
    with open(out / "labels.jsonl", "w") as f:
        for l in labels:
            f.write(json.dumps(l) + "\n")

    # Benign sessions: welcome, then five user/skill exchanges ending on a user turn.
    skill_records = {s["id"]: s for s in SKILLS}
    benign = []
    for s in SKILLS[:12]:
        turns = [{"role": "skill", "text": s["welcome"], "timestamp": 0.0}]
        t = 0.0
        pool = list(held_out[s["id"]])
        rng.shuffle(pool)
        for i in range(5):
            t += rng.uniform(2.0, 6.0)
            turns.append({"role": "user", "text": pool[i % len(pool)], "timestamp": round(t, 2)})
            if i < 4:
                t += rng.uniform(0.5, 2.0)
                turns.append({"role": "skill", "text": s["responses"][(i + 1) % len(s["responses"])], "timestamp": round(t, 2)})
        benign.append({"session_id": f"benign-{s['id']}", "skill": record_of(s), "turns": turns})

    with open(out / "benign.jsonl", "w") as f:
        for b in benign:
            f.write(json.dumps(b) + "\n")

    # Attacks: 15 user turns replaced by switch utterances, 10 final skill responses
    # replaced by silence or a goodbye.
    attacks = []
    for k, u in enumerate(ATTACK_SWITCHES):
        base = benign[k % len(benign)]
        turns = [dict(t) for t in base["turns"]]
        user_idx = [i for i, t in enumerate(turns) if t["role"] == "user"]
        turns[user_idx[1 + k % 3]]["text"] = u
        attacks.append({"session_id": f"switch-{k + 1:02d}", "skill": base["skill"], "turns": turns})
    for k, r in enumerate(FAKE_TERMINATIONS):
        base = benign[(k * 5 + 3) % len(benign)]
        turns = [dict(t) for t in base["turns"]]
        last_skill = max(i for i, t in enumerate(turns) if t["role"] == "skill")
        turns[last_skill]["text"] = r
        attacks.append({"session_id": f"termination-{k + 1:02d}", "skill": base["skill"], "turns": turns})
    with open(out / "attack.jsonl", "w") as f:
        for a in attacks:
            f.write(json.dumps(a) + "\n")


def record_of(s):
    return {
        "id": s["id"],
        "display_name": s["display"],
        "invocation_name": s["name"],
        "author": "example-dev",
        "category": s["category"],
        "description": s["description"],
    }


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out_dir", nargs="?", type=Path, default=Path(__file__).resolve().parent.parent / "data")
    ap.add_argument("--seed", type=int, default=SEED)
    args = ap.parse_args()
    main(args.out_dir, args.seed)
